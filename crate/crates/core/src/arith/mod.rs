//! Exact number-theoretic primitives.
//!
//! Every exact quantity (exponents, weights, Dedekind sums, series
//! coefficients) is a [`Rational`]. Roots of unity are carried as [`Phase`]s,
//! elements of Q/Z, and only become floating point at the very end through
//! [`e_of`].

mod bernoulli;
mod dedekind;
mod kronecker;
mod phase;

pub use bernoulli::{bernoulli, sigma, SigmaValue};
pub use dedekind::{dedekind_sum, dedekind_sum_naive, dedekind_sum_scaled};
pub use kronecker::kronecker;
pub use phase::{e_of, e_of_ratio, e_of_turns, ComplexApprox, Phase, UNBOUNDED};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-size fraction, always reduced with a positive denominator.
pub type Rational = BigRational;

/// `n/d` as a [`Rational`]. Panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let err = || Error::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // numerator and denominator individually overflow f64
        let shift = x.denom().bits().max(x.numer().bits()) as i64 - 1000;
        let n = (x.numer() >> shift.max(0) as usize)
            .to_f64()
            .unwrap_or(f64::NAN);
        let d = (x.denom() >> shift.max(0) as usize)
            .to_f64()
            .unwrap_or(f64::NAN);
        n / d
    })
}

/// `Some(i)` when `x` is an integer fitting in `i64`.
pub fn as_i64(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

/// The sawtooth function ((x)): `x - floor(x) - 1/2` off the integers, `0` on them.
pub fn sawtooth(x: &Rational) -> Rational {
    if x.is_integer() {
        Rational::zero()
    } else {
        x - x.floor() - Rational::new(BigInt::one(), BigInt::from(2))
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// `(g, x, y)` with `a x + b y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `m > 0`, in `[0, m)`.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = ext_gcd(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as i64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut f = 2u64;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 1;
    }
    true
}

/// Positive divisors of `n >= 1` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n).into_iter().fold(n, |acc, p| acc - acc / p)
}

/// Distinct prime factors of `n` in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Least common multiple of the denominators of `xs`.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sawtooth_examples() {
        assert_eq!(sawtooth(&rat(1, 2)), int(0));
        assert_eq!(sawtooth(&int(3)), int(0));
        assert_eq!(sawtooth(&rat(1, 5)), rat(-3, 10));
        assert_eq!(sawtooth(&rat(-1, 5)), rat(3, 10));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("44/9").unwrap(), rat(44, 9));
        assert_eq!(parse_rational("-4/9").unwrap(), rat(-4, 9));
        assert_eq!(parse_rational(" 12 ").unwrap(), int(12));
        assert_eq!(parse_rational("6/-4").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn small_helpers() {
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(-3, 7), Some(2));
        assert_eq!(mod_inverse(2, 4), None);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(1), 1);
        assert!(is_prime(11) && !is_prime(1) && !is_prime(9));
    }
}
