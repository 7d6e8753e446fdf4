//! Fourier coefficients of the Eisenstein series `E^{i infty}_{k,p}` and
//! `E^1_{k,p}` attached to `eta(tau)^{r1} eta(p tau)^{rp}`.
//!
//! Both expansions are sums over moduli `c` of exponential sums twisted by
//! Dedekind sums. The `c`-sum is truncated at `c_max`; the reported
//! `tail_bound` bounds every dropped inner sum by its number of terms.

mod kernel;
mod kloosterman;

pub use kernel::complete_matrix_cusp1;
pub use kloosterman::{kloosterman, kloosterman_terms, KloostermanTerms};

pub(crate) use kernel::{InftySum, OneSum, Weights};

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{bernoulli, int, sigma, to_f64, ComplexApprox, Rational};
use crate::error::{Error, Result};
use crate::gamma::gamma_reference_f64;
use crate::multiplier::PrimeLevelSpec;
use crate::par::{reduce_moduli, Contribution};

/// Relative accuracy of the reference Gamma function used in prefactors.
const GAMMA_REL_ERR: f64 = 1e-13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Cusp {
    Infty,
    One,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EisensteinParams {
    pub spec: PrimeLevelSpec,
    pub k: Rational,
    pub cusp: Cusp,
    pub c_max: u64,
    pub precision: u32,
}

impl EisensteinParams {
    pub fn new(
        spec: PrimeLevelSpec,
        k: Rational,
        cusp: Cusp,
        c_max: u64,
        precision: u32,
    ) -> Result<Self> {
        if k <= int(2) {
            return Err(Error::InvalidParameter(format!(
                "weight k = {k} must exceed 2"
            )));
        }
        let half_diff = (&k - &spec.kprime) / int(2);
        if !half_diff.is_integer() {
            return Err(Error::InvalidParameter(format!(
                "k - k' = {} must be an even integer",
                &k - &spec.kprime
            )));
        }
        match cusp {
            Cusp::Infty if !spec.n_inf.is_integer() => {
                return Err(Error::Precondition(format!(
                    "n_inf = {} is not an integer",
                    spec.n_inf
                )))
            }
            Cusp::One if !spec.n_one.is_integer() => {
                return Err(Error::Precondition(format!(
                    "n_one = {} is not an integer",
                    spec.n_one
                )))
            }
            _ => {}
        }
        if c_max == 0 {
            return Err(Error::InvalidParameter("c_max must be positive".into()));
        }
        if !(24..=53).contains(&precision) {
            return Err(Error::InvalidParameter(format!(
                "precision {precision} bits outside the supported binary64 range 24..=53"
            )));
        }
        Ok(EisensteinParams {
            spec,
            k,
            cusp,
            c_max,
            precision,
        })
    }

    /// `(-1)^{(k - k')/2}`.
    fn sign(&self) -> f64 {
        let j = ((&self.k - &self.spec.kprime) / int(2)).to_integer();
        if j.is_odd() {
            -1.0
        } else {
            1.0
        }
    }

    fn k_f64(&self) -> f64 {
        to_f64(&self.k)
    }

    fn weights(&self) -> Result<Weights> {
        exact_weights(&self.spec)
    }
}

/// One Fourier coefficient with its truncation data.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffResult {
    /// Exponent of `q`: an integer at infinity, a multiple of `1/m_inf` at the cusp 1.
    pub n: Rational,
    pub value: ComplexApprox,
    /// Bound on the contribution of the moduli `c > c_max`.
    pub tail_bound: f64,
    pub c_max: u64,
}

impl Serialize for CoeffResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CoeffResult", 6)?;
        st.serialize_field("n", &self.n.to_string())?;
        st.serialize_field("re", &self.value.re)?;
        st.serialize_field("im", &self.value.im)?;
        st.serialize_field("err", &self.value.err)?;
        st.serialize_field("tail_bound", &self.tail_bound)?;
        st.serialize_field("c_max", &self.c_max)?;
        st.end()
    }
}

/// `sum_{c <= c_max} c^{-k} S_c(n)` for every `n`, where `inner(c, ns)` returns
/// `S_c(n)` and its term count. Also returns `sum c^{-k} * terms`.
pub(crate) fn sum_over_moduli<F>(c_max: u64, k: f64, ns: &[i64], inner: F) -> (Vec<Complex64>, f64)
where
    F: Fn(i64, &[i64]) -> (Vec<Complex64>, usize) + Sync,
{
    reduce_moduli(c_max, ns.len(), |c| {
        let (values, count) = inner(c as i64, ns);
        if count == 0 {
            return None;
        }
        let w = (c as f64).powf(-k);
        Some(Contribution {
            values: values.into_iter().map(|z| z * w).collect(),
            terms: count as f64 * w,
        })
    })
}

/// `p * C^{2-k} / (k - 2)`-type bound on `sum_{c > C} c^{-k} |S_c|` when `|S_c| <= width * c`.
pub(crate) fn crude_tail(width: f64, k: f64, c_max: u64) -> f64 {
    width * (c_max as f64).powf(2.0 - k) / (k - 2.0)
}

/// Unit roundoff of the rounded exponentials and the compensated sums.
pub(crate) fn rounding(precision: u32) -> f64 {
    (2.0f64).powi(1 - precision as i32) * 4.0
}

/// `r1 = u1/den`, `rp = up/den` with a common denominator.
fn exact_weights(spec: &PrimeLevelSpec) -> Result<Weights> {
    let den = spec.r1.denom().lcm(spec.rp.denom());
    let scale = |r: &Rational| {
        (r * Rational::from_integer(den.clone()))
            .to_integer()
            .to_i128()
    };
    match (scale(&spec.r1), scale(&spec.rp), den.to_i128()) {
        (Some(u1), Some(up), Some(den))
            if den < 1 << 40 && u1.abs() < 1 << 40 && up.abs() < 1 << 40 =>
        {
            Ok(Weights::Exact { u1, up, den })
        }
        _ => Err(Error::Overflow("exponents too large for exact phases")),
    }
}

/// Single inner sum of the expansion at infinity, for one modulus `c`.
pub fn exp_sum_infty(
    spec: &PrimeLevelSpec,
    n: i64,
    c: u64,
    precision: u32,
) -> Result<ComplexApprox> {
    if !(24..=53).contains(&precision) {
        return Err(Error::InvalidParameter(format!(
            "precision {precision} outside 24..=53"
        )));
    }
    if c == 0 {
        return Err(Error::InvalidParameter("modulus c must be positive".into()));
    }
    let kernel = InftySum {
        p: spec.p as i64,
        n_inf: as_int(&spec.n_inf)?,
        weights: exact_weights(spec)?,
    };
    let (v, count) = kernel.sums(c as i64, &[n]);
    Ok(ComplexApprox::new(v[0], count as f64 * rounding(precision)))
}

fn as_int(x: &Rational) -> Result<i64> {
    x.to_integer()
        .to_i64()
        .filter(|_| x.is_integer())
        .ok_or_else(|| Error::Precondition(format!("{x} is not a machine integer")))
}

/// Coefficient of `q^n` of `E^{i infty}_{k,p}`.
pub fn coeff_infty(params: &EisensteinParams, n: i64) -> Result<CoeffResult> {
    if params.cusp != Cusp::Infty {
        return Err(Error::InvalidParameter(
            "coeff_infty needs cusp = infty".into(),
        ));
    }
    if n < 0 {
        return Err(Error::InvalidParameter(format!(
            "index n = {n} must be non-negative"
        )));
    }
    Ok(infty_coeffs(params, &[n])?.remove(0))
}

fn infty_coeffs(params: &EisensteinParams, ns: &[i64]) -> Result<Vec<CoeffResult>> {
    let spec = &params.spec;
    let kernel = InftySum {
        p: spec.p as i64,
        n_inf: as_int(&spec.n_inf)?,
        weights: params.weights()?,
    };
    let k = params.k_f64();
    let positive: Vec<i64> = ns.iter().copied().filter(|&n| n > 0).collect();
    let (sums, terms) = sum_over_moduli(params.c_max, k, &positive, |c, ns| kernel.sums(c, ns));
    let pref =
        params.sign() * (2.0 * PI).powf(k) / (gamma_reference_f64(k)? * (spec.p as f64).powf(k));
    let mut sums = sums.into_iter();
    let unit = rounding(params.precision);
    Ok(ns
        .iter()
        .map(|&n| {
            if n == 0 {
                return CoeffResult {
                    n: Rational::zero(),
                    value: ComplexApprox::exact(Complex64::new(1.0, 0.0)),
                    tail_bound: 0.0,
                    c_max: params.c_max,
                };
            }
            let scale = pref * (n as f64).powf(k - 1.0);
            let value = sums.next().expect("one sum per index") * scale;
            let err = scale.abs() * terms * unit + value.norm() * GAMMA_REL_ERR;
            CoeffResult {
                n: int(n),
                value: ComplexApprox::new(value, err),
                tail_bound: scale.abs() * crude_tail(spec.p as f64, k, params.c_max),
                c_max: params.c_max,
            }
        })
        .collect())
}

/// Coefficient of `q^{n / m_inf}` of `E^1_{k,p}`.
pub fn coeff_one(params: &EisensteinParams, n: i64) -> Result<CoeffResult> {
    if params.cusp != Cusp::One {
        return Err(Error::InvalidParameter("coeff_one needs cusp = one".into()));
    }
    if n < 1 {
        return Err(Error::InvalidParameter(format!(
            "index n = {n} must be positive"
        )));
    }
    Ok(one_coeffs(params, &[n])?.remove(0))
}

pub(crate) fn one_kernel(params: &EisensteinParams) -> Result<OneSum> {
    let spec = &params.spec;
    let Weights::Exact { u1, up, den } = params.weights()? else {
        unreachable!()
    };
    Ok(OneSum {
        p: spec.p as i64,
        v_inf: spec
            .n_inf
            .numer()
            .to_i128()
            .ok_or(Error::Overflow("n_inf numerator"))?,
        m_inf: spec.m_inf as i64,
        u1,
        up,
        den,
    })
}

fn one_coeffs(params: &EisensteinParams, ns: &[i64]) -> Result<Vec<CoeffResult>> {
    let spec = &params.spec;
    let kernel = one_kernel(params)?;
    let k = params.k_f64();
    let m = spec.m_inf as f64;
    let positive: Vec<i64> = ns.iter().copied().filter(|&n| n > 0).collect();
    let (sums, terms) = sum_over_moduli(params.c_max, k, &positive, |c, ns| kernel.sums(c, ns));
    let pref = params.sign() * (2.0 * PI).powf(k) / (gamma_reference_f64(k)? * m.powf(k));
    let mut sums = sums.into_iter();
    let unit = rounding(params.precision);
    Ok(ns
        .iter()
        .map(|&n| {
            let exponent = Rational::new(BigInt::from(n), BigInt::from(spec.m_inf));
            if n == 0 {
                return CoeffResult {
                    n: exponent,
                    value: ComplexApprox::exact(Complex64::new(0.0, 0.0)),
                    tail_bound: 0.0,
                    c_max: params.c_max,
                };
            }
            let scale = pref * (n as f64).powf(k - 1.0);
            let value = sums.next().expect("one sum per index") * scale;
            let err = scale.abs() * terms * unit + value.norm() * GAMMA_REL_ERR;
            CoeffResult {
                n: exponent,
                value: ComplexApprox::new(value, err),
                tail_bound: scale.abs() * crude_tail(m, k, params.c_max),
                c_max: params.c_max,
            }
        })
        .collect())
}

/// Phase of the `(c, d)` term at the cusp 1, excluding `dn/(c m_inf)`,
/// computed with the completion `(a, b)`. Any `(a, b)` with `ad - bc = 1`,
/// `p | a + c` and `a + c > 0` is accepted.
pub fn cusp1_dedekind_phase(
    params: &EisensteinParams,
    c: i64,
    d: i64,
    a: i64,
    b: i64,
) -> Result<Rational> {
    let p = params.spec.p as i64;
    let ok = c > 0
        && c % p != 0
        && a as i128 * d as i128 - b as i128 * c as i128 == 1
        && (a + c) % p == 0
        && a + c > 0;
    if !ok {
        return Err(Error::Precondition(format!(
            "({a}, {b}; {c}, {d}) is not a valid completion for the cusp 1 at level {p}"
        )));
    }
    let (num, den) = one_kernel(params)?.dedekind_phase(c, d, a, b);
    Ok(Rational::new(BigInt::from(num), BigInt::from(den)))
}

/// Coefficients for `n = 0..=n_max` (exponents `n / m_inf` at the cusp 1),
/// sharing one pass over `(c, d)` between all `n`.
pub fn qexpansion(params: &EisensteinParams, n_max: u64) -> Result<Vec<CoeffResult>> {
    let ns: Vec<i64> = (0..=n_max as i64).collect();
    match params.cusp {
        Cusp::Infty => infty_coeffs(params, &ns),
        Cusp::One => one_coeffs(params, &ns),
    }
}

/// Coefficient of `q^n` of the classical weight `k` Eisenstein series on
/// `Gamma0(p)` with trivial character.
pub fn classical_coeff(p: u64, k: u64, n: u64) -> Result<Rational> {
    if k < 4 || k % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "weight {k} must be even and at least 4"
        )));
    }
    if n == 0 {
        return Ok(Rational::one());
    }
    let kk = k as usize;
    let pk = Rational::from_integer(BigInt::from(p).pow(k as u32));
    let e = int(k as i64 - 1);
    let nr = int(n as i64);
    let sig = |x: &Rational| sigma(&e, x).exact().cloned().expect("integer exponent");
    let inner = &pk * sig(&(&nr / int(p as i64))) - sig(&nr);
    Ok(-(int(2 * k as i64) / bernoulli(kk)) / (pk - Rational::one()) * inner)
}
