//! Kloosterman sums twisted by powers of `(.|3)`, and the rearranged form of
//! the level-3 expansion with integer exponents.

use num_complex::Complex64;
use num_integer::Integer;

use super::{InftySum, Weights};
use crate::arith::{e_of_ratio, kronecker, mod_inverse, ComplexApprox};
use crate::par::ComplexSum;

/// `psi(r) = (r|3)^{r3}`. For `r3 = 0` this is the trivial character, also at `3 | r`.
fn psi(r3: i64, r: i64) -> i32 {
    if r3 == 0 {
        return 1;
    }
    let l = kronecker(r, 3);
    if l == 0 {
        0
    } else if r3.rem_euclid(2) == 0 {
        1
    } else {
        l
    }
}

/// `K(psi, m, n; c) = sum_{r mod c, (r, c) = 1} psi(r) e((m r + n r^{-1}) / c)`
/// with `psi = (.|3)^{r3}`.
pub fn kloosterman(r3: i64, m: i64, n: i64, c: u64) -> ComplexApprox {
    assert!(c >= 1, "modulus must be positive");
    let c = c as i64;
    let mut acc = ComplexSum::default();
    let mut count = 0usize;
    for r in 0..c {
        if r.gcd(&c) != 1 {
            continue;
        }
        let w = psi(r3, r);
        if w == 0 {
            continue;
        }
        count += 1;
        let inv = mod_inverse(r, c).expect("coprime") as i128;
        let num = (m as i128 * r as i128 + n as i128 * inv).rem_euclid(c as i128);
        acc.add(e_of_ratio(num, c as i128) * w as f64);
    }
    ComplexApprox::new(acc.value(), count as f64 * f64::EPSILON * 4.0)
}

/// Per-modulus terms of the level-3 expansion with `r1 = -3 r3` in both forms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KloostermanTerms {
    /// `(-1)^{(k-k')/2} (3c)^{-k} sum_d e(...)`, straight from the Dedekind-sum phases.
    pub direct: Complex64,
    /// `e(-k/4) (3c)^{-k} K(psi, c^2 r3 + n, c^2 r3; 3c)`.
    pub kloosterman: Complex64,
}

/// Both per-`c` terms for integer `r3`, weight `k > 2` with `k = r3 (mod 2)`.
pub fn kloosterman_terms(r3: i64, k: i64, n: i64, c: u64) -> crate::Result<KloostermanTerms> {
    if k <= 2 || (k - r3).rem_euclid(2) != 0 {
        return Err(crate::Error::InvalidParameter(format!(
            "weight {k} must exceed 2 and have the parity of r3 = {r3}"
        )));
    }
    let kernel = InftySum {
        p: 3,
        n_inf: 0,
        weights: Weights::Exact {
            u1: -3 * r3 as i128,
            up: r3 as i128,
            den: 1,
        },
    };
    let (s, _) = kernel.sums(c as i64, &[n]);
    let scale = (3.0 * c as f64).powi(-k as i32);
    // k' = -r3
    let sign = if ((k + r3) / 2).rem_euclid(2) == 1 {
        -1.0
    } else {
        1.0
    };
    let cc = c as i64 * c as i64;
    let kl = kloosterman(r3, cc * r3 + n, cc * r3, 3 * c).value();
    Ok(KloostermanTerms {
        direct: s[0] * (sign * scale),
        kloosterman: e_of_ratio(-k as i128, 4) * kl * scale,
    })
}
