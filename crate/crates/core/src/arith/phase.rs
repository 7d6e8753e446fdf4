use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::{to_f64, Rational};
use crate::error::{Error, Result};

/// Sentinel for an error bound that is not known.
pub const UNBOUNDED: f64 = f64::INFINITY;

/// An element of Q/Z standing for the root of unity `e(x) = exp(2 pi i x)`.
///
/// The representative is kept in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(Rational);

impl Phase {
    pub fn new(x: Rational) -> Self {
        let r = &x - x.floor();
        Phase(r)
    }

    pub fn zero() -> Self {
        Phase(Rational::zero())
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Phase::new(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `n * x` in Q/Z.
    pub fn times(&self, n: &Rational) -> Phase {
        Phase::new(&self.0 * n)
    }

    /// Order of the root of unity, i.e. the reduced denominator.
    pub fn order(&self) -> BigInt {
        self.0.denom().clone()
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        Phase::new(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Phase> for &'a Phase {
    type Output = Phase;
    fn add(self, rhs: &Phase) -> Phase {
        Phase::new(&self.0 + &rhs.0)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        Phase::new(self.0 - rhs.0)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::new(-self.0)
    }
}

impl From<Rational> for Phase {
    fn from(x: Rational) -> Self {
        Phase::new(x)
    }
}

/// A complex number in floating point together with an absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexApprox {
    pub re: f64,
    pub im: f64,
    /// Absolute error bound, [`UNBOUNDED`] when unknown.
    pub err: f64,
}

impl ComplexApprox {
    pub fn new(z: Complex64, err: f64) -> Self {
        ComplexApprox {
            re: z.re,
            im: z.im,
            err,
        }
    }

    pub fn exact(z: Complex64) -> Self {
        ComplexApprox::new(z, 0.0)
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn abs(&self) -> f64 {
        self.value().norm()
    }
}

fn check_precision(precision: u32) -> Result<()> {
    if !(24..=53).contains(&precision) {
        return Err(Error::InvalidParameter(format!(
            "precision {precision} bits outside the supported binary64 range 24..=53"
        )));
    }
    Ok(())
}

/// `exp(2 pi i x)` with an absolute error bound of `2^(1 - precision)`.
pub fn e_of(x: &Phase, precision: u32) -> Result<ComplexApprox> {
    check_precision(precision)?;
    let r = x.value();
    let z = match (r.numer().to_i128(), r.denom().to_i128()) {
        (Some(n), Some(d)) if d < (1i128 << 100) => e_of_ratio(n, d),
        _ => e_of_turns(to_f64(r)),
    };
    Ok(ComplexApprox::new(z, (2.0f64).powi(1 - precision as i32)))
}

/// Rotates `exp(2 pi i y)`, `|y| <= 1/8`, by `i^quadrant`.
#[inline]
fn rotate(quadrant: i64, angle: f64) -> Complex64 {
    let (s, c) = angle.sin_cos();
    match quadrant.rem_euclid(4) {
        0 => Complex64::new(c, s),
        1 => Complex64::new(-s, c),
        2 => Complex64::new(-c, -s),
        _ => Complex64::new(s, -c),
    }
}

/// `e(num/den)` for integers, `den > 0`.
///
/// The argument is reduced exactly to the nearest quarter turn, so quarter
/// turns are reproduced without rounding.
#[inline]
pub fn e_of_ratio(num: i128, den: i128) -> Complex64 {
    debug_assert!(den > 0);
    let r = num.rem_euclid(den);
    // nearest quarter: m = round(4r/den)
    let m = (8 * r + den) / (2 * den);
    let rest = 4 * r - m * den; // in [-den/2, den/2]
    let angle = FRAC_PI_2 * (rest as f64 / den as f64);
    rotate(m as i64, angle)
}

/// `e(t)` for a real number of turns.
#[inline]
pub fn e_of_turns(t: f64) -> Complex64 {
    let x = t - t.floor();
    let m = (4.0 * x).round();
    let rest = 4.0 * x - m;
    rotate(m as i64, FRAC_PI_2 * rest)
}
