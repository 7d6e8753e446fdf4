use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{divisors, to_f64, Rational};

/// Bernoulli number `B_k` with the convention `x/(e^x - 1) = sum B_k x^k / k!`.
pub fn bernoulli(k: usize) -> Rational {
    if k > 1 && k % 2 == 1 {
        return Rational::zero();
    }
    // sum_{j <= m} C(m+1, j) B_j = 0
    let mut b: Vec<Rational> = Vec::with_capacity(k + 1);
    b.push(Rational::one());
    for m in 1..=k {
        let mut binom = BigInt::one(); // C(m+1, 0)
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += bj * Rational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b.pop().unwrap()
}

/// Value of a divisor power sum.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum SigmaValue {
    Exact(#[serde(serialize_with = "crate::report::ser_rational")] Rational),
    Approx(f64),
}

impl SigmaValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            SigmaValue::Exact(x) => to_f64(x),
            SigmaValue::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            SigmaValue::Exact(x) => Some(x),
            SigmaValue::Approx(_) => None,
        }
    }
}

/// `sigma_{e}(n) = sum_{d | n} d^e`, zero unless `n` is a positive integer.
///
/// Integer exponents give exact rationals; other exponents fall back to `f64`.
pub fn sigma(exponent: &Rational, n: &Rational) -> SigmaValue {
    let n = match (n.is_integer(), n.to_integer().to_u64()) {
        (true, Some(n)) if n > 0 => n,
        _ => return SigmaValue::Exact(Rational::zero()),
    };
    let divs = divisors(n);
    if exponent.is_integer() {
        let e = exponent.to_integer();
        let e_abs = e.abs().to_u32().expect("exponent too large");
        let mut acc = Rational::zero();
        for d in divs {
            let pow = BigInt::from(d).pow(e_abs);
            acc += if e.is_negative() {
                Rational::new(BigInt::one(), pow)
            } else {
                Rational::from_integer(pow)
            };
        }
        SigmaValue::Exact(acc)
    } else {
        let e = to_f64(exponent);
        SigmaValue::Approx(divs.into_iter().map(|d| (d as f64).powf(e)).sum())
    }
}
