//! Dedekind sums `s(h, k) = sum_{r mod k} ((r/k)) ((hr/k))`.
//!
//! The fast routine walks the Euclidean chain `(h, k) -> (k mod h, h)` and
//! unwinds it with the reciprocity law
//! `s(h,k) + s(k,h) = -1/4 + (h^2 + k^2 + 1) / (12hk)`.
//! Since `6k s(h,k)` is an integer, every level of the chain stays in
//! machine integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{PrimInt, Signed, Zero};

use super::Rational;

/// Integer arithmetic is exact in `i64` for moduli below this bound.
const I64_LIMIT: i64 = 1 << 20;
/// ... and in `i128` below this one.
const I128_LIMIT: i64 = 1 << 40;

/// Direct summation of the defining sum; `O(k)`, used as the reference oracle.
pub fn dedekind_sum_naive(h: i64, k: i64) -> Rational {
    assert!(k >= 1, "Dedekind sum needs k >= 1");
    let k128 = k as i128;
    let h = (h as i128).rem_euclid(k128);
    // ((r/k)) = (2r - k) / 2k off multiples of k
    let mut acc: i128 = 0;
    for r in 1..k128 {
        let hr = (h * r) % k128;
        if hr != 0 {
            acc += (2 * r - k128) * (2 * hr - k128);
        }
    }
    Rational::new(BigInt::from(acc), BigInt::from(4 * k128 * k128))
}

/// `6k * s(h, k)` for coprime `0 <= h < k`, generic over the working integer.
fn scaled_coprime<T: PrimInt + Signed>(h: T, k: T) -> T {
    let one = T::one();
    let two = one + one;
    let three = two + one;
    // chain of (h, k) pairs; Fibonacci growth keeps it under 64 for k < 2^40
    let mut chain: [(T, T); 64] = [(T::zero(), T::zero()); 64];
    let mut len = 0;
    let (mut h, mut k) = (h, k);
    while !h.is_zero() {
        chain[len] = (h, k);
        len += 1;
        let next = k % h;
        k = h;
        h = next;
    }
    // bottom: s(0, 1) = 0
    let mut val = T::zero();
    for &(h, k) in chain[..len].iter().rev() {
        // val currently holds 6h s(k mod h, h) = 6h s(k, h)
        let num = h * h + k * k + one - three * h * k - two * k * val;
        debug_assert!((num % (two * h)).is_zero());
        val = num / (two * h);
    }
    val
}

/// `6k * s(h, k)`, which is always an integer. Requires `1 <= k < 2^40`.
#[inline]
pub fn dedekind_sum_scaled(h: i64, k: i64) -> i128 {
    debug_assert!(k >= 1);
    let hr = h.rem_euclid(k);
    let g = hr.gcd(&k);
    let (h1, k1) = (hr / g, k / g);
    if k1 == 1 {
        return 0;
    }
    let v = if k1 < I64_LIMIT {
        scaled_coprime::<i64>(h1, k1) as i128
    } else {
        assert!(
            k1 < I128_LIMIT,
            "modulus {k1} too large for the scaled Dedekind sum"
        );
        scaled_coprime::<i128>(h1 as i128, k1 as i128)
    };
    // s(h,k) = s(h/g, k/g), so 6k s = g * (6 k1 s)
    v * g as i128
}

/// Exact Dedekind sum `s(h, k)` via the reciprocity chain, `O(log k)`.
pub fn dedekind_sum(h: i64, k: i64) -> Rational {
    assert!(k >= 1, "Dedekind sum needs k >= 1");
    if k < I128_LIMIT {
        return Rational::new(
            BigInt::from(dedekind_sum_scaled(h, k)),
            BigInt::from(6 * k as i128),
        );
    }
    dedekind_sum_big(BigInt::from(h), BigInt::from(k))
}

fn dedekind_sum_big(h: BigInt, k: BigInt) -> Rational {
    let mut h = h.mod_floor(&k);
    let g = h.gcd(&k);
    let mut k = k / &g;
    h /= &g;
    let mut sign = 1i32;
    let mut acc = Rational::zero();
    let quarter = Rational::new(BigInt::from(1), BigInt::from(4));
    while !h.is_zero() {
        let term = Rational::new(&h * &h + &k * &k + 1, BigInt::from(12) * &h * &k) - &quarter;
        if sign > 0 {
            acc += term;
        } else {
            acc -= term;
        }
        sign = -sign;
        let next = k.mod_floor(&h);
        k = h;
        h = next;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{gcd, int, rat};

    #[test]
    fn examples() {
        assert_eq!(dedekind_sum_naive(1, 5), rat(1, 5));
        assert_eq!(dedekind_sum_naive(0, 1), int(0));
        assert_eq!(dedekind_sum_naive(2, 5), int(0));
        assert_eq!(dedekind_sum(1, 3), rat(1, 18));
        assert_eq!(dedekind_sum(7, 1), int(0));
        assert_eq!(dedekind_sum(-5, 12), -dedekind_sum_naive(5, 12));
    }

    #[test]
    fn s_one_p_closed_form() {
        for p in [2i64, 3, 5, 7, 11, 13, 101] {
            assert_eq!(dedekind_sum(1, p), rat((p - 1) * (p - 2), 12 * p));
        }
    }

    #[test]
    fn fast_matches_naive_small() {
        for k in 1..=60 {
            for h in -k..2 * k {
                assert_eq!(dedekind_sum(h, k), dedekind_sum_naive(h, k), "s({h},{k})");
            }
        }
    }

    #[test]
    fn non_coprime_arguments() {
        assert_eq!(dedekind_sum(4, 6), dedekind_sum(2, 3));
        assert_eq!(dedekind_sum(0, 6), int(0));
        assert_eq!(dedekind_sum_scaled(6, 9), 3 * dedekind_sum_scaled(2, 3));
    }

    #[test]
    fn big_path_matches() {
        let (h, k) = (987_654_323_i64, (1i64 << 41) + 15);
        assert_eq!(gcd(h, k), 1);
        let lhs = dedekind_sum(h, k) + dedekind_sum(k, h);
        let rhs = rat(-1, 4)
            + Rational::new(
                BigInt::from(h) * h + BigInt::from(k) * k + 1,
                BigInt::from(12) * h * k,
            );
        assert_eq!(lhs, rhs);
        for (h, k) in [(17i64, 1_000_003i64), (1_234_567, 7_654_321)] {
            assert_eq!(
                dedekind_sum(h, k),
                dedekind_sum_big(BigInt::from(h), BigInt::from(k))
            );
        }
    }

    #[test]
    fn i128_path_reciprocity() {
        let (h, k) = (3_000_017i64, 5_000_011i64);
        let lhs = dedekind_sum(h, k) + dedekind_sum(k, h);
        let hk = Rational::from_integer(BigInt::from(h) * BigInt::from(k));
        let rhs = rat(-1, 4)
            + (Rational::from_integer(BigInt::from(h) * h + BigInt::from(k) * k + 1))
                / (hk * int(12));
        assert_eq!(lhs, rhs);
    }
}
