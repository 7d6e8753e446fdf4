//! Values of Euler's Gamma function from exponential sums of Dedekind sums.
//!
//! Comparing coefficients of `E^{i infty}_{k,2}(.; 4k, -2k)` with
//! `eta^{4k}(tau) eta^{-2k}(2 tau)` (valid for `2 < k <= 4`), or of
//! `E^{i infty}_{k,3}(.; 3k, -k)` with `eta^{3k}(tau) eta^{-k}(3 tau)`
//! (valid for `2 < k <= 3`), expresses `Gamma(k)` as
//! `(2 pi)^k n^{k-1} / A_p(n) * sum_c (pc)^{-k} sum_d e(nd/(pc) - ...)`.
//! Other arguments are first moved into a window with `Gamma(z+1) = z Gamma(z)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{int, parse_rational, rat, to_f64, ComplexApprox, Rational};
use crate::eisenstein::{crude_tail, rounding, sum_over_moduli, InftySum, Weights};
use crate::error::{Error, Result};
use crate::eta::eta_quotient_series;
use crate::multiplier::PrimeLevelSpec;

/// Largest number of recurrence steps `gamma_reduce` will take.
pub const MAX_REDUCTION_STEPS: u64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// Level 2, valid for `2 < k <= 4`.
    P2,
    /// Level 3, valid for `2 < k <= 3`.
    P3,
    Auto,
}

impl Route {
    fn prime(self) -> u64 {
        match self {
            Route::P3 => 3,
            _ => 2,
        }
    }

    /// Upper end of the validity window; the lower end is always 2.
    fn top(self) -> i64 {
        match self {
            Route::P3 => 3,
            _ => 4,
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::P2 => "p2",
            Route::P3 => "p3",
            Route::Auto => "auto",
        })
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "p2" => Ok(Route::P2),
            "p3" => Ok(Route::P3),
            "auto" => Ok(Route::Auto),
            _ => Err(Error::Parse(format!(
                "unknown route {s:?}; expected p2, p3 or auto"
            ))),
        }
    }
}

/// Argument of Gamma: exact rational or real.
#[derive(Clone, Debug, PartialEq)]
pub enum GammaArg {
    Rational(Rational),
    Real(f64),
}

impl GammaArg {
    pub fn to_f64(&self) -> f64 {
        match self {
            GammaArg::Rational(x) => to_f64(x),
            GammaArg::Real(x) => *x,
        }
    }

    /// Parses `"p/q"` or an integer as a rational, anything else as a float.
    pub fn parse(s: &str) -> Result<Self> {
        if let Ok(x) = parse_rational(s) {
            return Ok(GammaArg::Rational(x));
        }
        match s.trim().parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(GammaArg::Real(x)),
            _ => Err(Error::Parse(format!(
                "cannot parse {s:?} as a rational or a real number"
            ))),
        }
    }

    fn add_int(&self, j: i64) -> GammaArg {
        match self {
            GammaArg::Rational(x) => GammaArg::Rational(x + int(j)),
            GammaArg::Real(x) => GammaArg::Real(x + j as f64),
        }
    }
}

impl fmt::Display for GammaArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaArg::Rational(x) => write!(f, "{x}"),
            GammaArg::Real(x) => write!(f, "{x}"),
        }
    }
}

/// `Gamma(k) = multiplier * Gamma(k0)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Multiplier {
    Exact(Rational),
    Real(f64),
}

impl Multiplier {
    pub fn to_f64(&self) -> f64 {
        match self {
            Multiplier::Exact(x) => to_f64(x),
            Multiplier::Real(x) => *x,
        }
    }
}

/// Reduction of `k` into the window of `route`, and the route actually used.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    pub k0: GammaArg,
    pub multiplier: Multiplier,
    pub route: Route,
}

fn pole(k: &GammaArg) -> Error {
    Error::GammaPole(format!("Gamma has a pole at k = {k}"))
}

/// Moves `k` into the window of `route` with the functional equation.
///
/// Arguments already inside the window `(2, top]` are kept. Others are moved
/// into the top unit interval `(top - 1, top]`. `Auto` keeps `(3, 4]` on P2
/// and `(2, 3]` on P3 and sends everything else to `(3, 4]` on P2.
pub fn gamma_reduce(k: &GammaArg, route: Route) -> Result<Reduction> {
    let x = k.to_f64();
    if let GammaArg::Real(v) = k {
        if !v.is_finite() {
            return Err(Error::InvalidParameter(format!("k = {v} is not finite")));
        }
    }
    let is_pole = match k {
        GammaArg::Rational(r) => r.is_integer() && !r.is_positive(),
        GammaArg::Real(v) => *v <= 0.0 && v.fract() == 0.0,
    };
    if is_pole {
        return Err(pole(k));
    }
    let route = match route {
        Route::Auto if x > 2.0 && x <= 3.0 => Route::P3,
        Route::Auto => Route::P2,
        r => r,
    };
    let top = route.top();
    let in_window = match k {
        GammaArg::Rational(r) => *r > int(2) && *r <= int(top),
        GammaArg::Real(v) => *v > 2.0 && *v <= top as f64,
    };
    if in_window {
        let multiplier = match k {
            GammaArg::Rational(_) => Multiplier::Exact(Rational::one()),
            GammaArg::Real(_) => Multiplier::Real(1.0),
        };
        return Ok(Reduction {
            k0: k.clone(),
            multiplier,
            route,
        });
    }
    // shift = k0 - k with k0 in (top - 1, top]
    let shift = match k {
        GammaArg::Rational(r) => (int(top) - r).floor().to_integer().to_i64(),
        GammaArg::Real(v) => Some((top as f64 - v).floor() as i64),
    }
    .filter(|s| s.unsigned_abs() <= MAX_REDUCTION_STEPS)
    .ok_or_else(|| {
        Error::InvalidParameter(format!(
            "k = {k} needs more than {MAX_REDUCTION_STEPS} reduction steps"
        ))
    })?;
    let k0 = k.add_int(shift);
    let multiplier = match k {
        GammaArg::Rational(r) => {
            let mut m = Rational::one();
            if shift > 0 {
                // Gamma(k) = Gamma(k0) / (k (k+1) ... (k0-1))
                for j in 0..shift {
                    m /= r + int(j);
                }
            } else {
                // Gamma(k) = (k-1)(k-2)...(k0) Gamma(k0)
                for j in 1..=-shift {
                    m *= r - int(j);
                }
            }
            Multiplier::Exact(m)
        }
        GammaArg::Real(v) => {
            let mut m = 1.0;
            if shift > 0 {
                for j in 0..shift {
                    m /= v + j as f64;
                }
            } else {
                for j in 1..=-shift {
                    m *= v - j as f64;
                }
            }
            Multiplier::Real(m)
        }
    };
    Ok(Reduction {
        k0,
        multiplier,
        route,
    })
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `Gamma(x)` by the Lanczos approximation, with reflection below 1/2.
pub fn gamma_reference_f64(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "Gamma argument {x} is not finite"
        )));
    }
    if x <= 0.0 && x.fract() == 0.0 {
        return Err(Error::GammaPole(format!("Gamma has a pole at {x}")));
    }
    if x < 0.5 {
        return Ok(PI / ((PI * x).sin() * gamma_reference_f64(1.0 - x)?));
    }
    let z = x - 1.0;
    let mut a = LANCZOS[0];
    let t = z + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    Ok((2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * a)
}

/// Independent high-accuracy `Gamma(k)`, relative error about `1e-13` for moderate `k`.
pub fn gamma_reference(k: &GammaArg, precision: u32) -> Result<ComplexApprox> {
    if !(24..=53).contains(&precision) {
        return Err(Error::InvalidParameter(format!(
            "precision {precision} outside 24..=53"
        )));
    }
    if let GammaArg::Rational(r) = k {
        if r.is_integer() && !r.is_positive() {
            return Err(pole(k));
        }
    }
    let v = gamma_reference_f64(k.to_f64())?;
    let rel = 1e-13f64.max((2.0f64).powi(1 - precision as i32));
    Ok(ComplexApprox::new(Complex64::new(v, 0.0), v.abs() * rel))
}

/// `A_p(n; r1, rp)`: coefficient of `q^{n_inf + n}` in `eta^{r1}(tau) eta^{rp}(p tau)`,
/// in floating point for real exponents.
pub fn eta_coefficient_real(p: u64, r1: f64, rp: f64, n: usize) -> f64 {
    // prod (1 - q^m)^{a_m}, a_m = r1 + rp [p | m]; n A_n = -sum_j b_j A_{n-j}, b_j = sum_{m | j} m a_m
    let b: Vec<f64> = (0..=n)
        .map(|j| {
            (1..=j)
                .filter(|m| j % m == 0)
                .map(|m| m as f64 * (r1 + if m as u64 % p == 0 { rp } else { 0.0 }))
                .sum()
        })
        .collect();
    let mut a = vec![0.0; n + 1];
    a[0] = 1.0;
    for i in 1..=n {
        let s: f64 = (1..=i).map(|j| b[j] * a[i - j]).sum();
        a[i] = -s / i as f64;
    }
    a[n]
}

#[derive(Clone, Debug, PartialEq)]
pub struct GammaRequest {
    pub k: GammaArg,
    pub route: Route,
    pub n_choice: u64,
    pub c_max: u64,
    pub precision: u32,
    pub extrapolate: bool,
}

impl GammaRequest {
    pub fn new(k: GammaArg, route: Route, c_max: u64) -> Self {
        GammaRequest {
            k,
            route,
            n_choice: 1,
            c_max,
            precision: 53,
            extrapolate: false,
        }
    }
}

/// Series value of `Gamma(k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaResult {
    pub k: GammaArg,
    /// Route actually used after resolving `Auto`.
    pub route: Route,
    pub n: u64,
    pub k0: GammaArg,
    pub multiplier: Multiplier,
    /// Includes the reduction multiplier; `err` covers rounding only.
    pub value: ComplexApprox,
    /// Guaranteed bound on the truncated moduli, scaled like `value`.
    pub tail_bound: f64,
    /// Set when `value` comes from the two-point extrapolation, which has no guaranteed bound.
    pub extrapolated: bool,
    pub c_max: u64,
}

impl Serialize for GammaResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GammaResult", 9)?;
        st.serialize_field("k", &self.k.to_string())?;
        st.serialize_field("route", &self.route)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("value_re", &self.value.re)?;
        st.serialize_field("value_im", &self.value.im)?;
        st.serialize_field("err", &self.value.err)?;
        st.serialize_field("tail_bound", &self.tail_bound)?;
        st.serialize_field("extrapolated", &self.extrapolated)?;
        st.serialize_field("c_max", &self.c_max)?;
        st.end()
    }
}

/// Parameters `(r1, rp)` of the eta quotient behind `route` at weight `k`.
fn route_exponents(route: Route, k: &Rational) -> (Rational, Rational) {
    match route {
        Route::P3 => (int(3) * k, -k.clone()),
        _ => (int(4) * k, int(-2) * k),
    }
}

/// `A_p(n)` for the route's eta quotient, exact for rational `k`.
pub fn route_coefficient(route: Route, k: &GammaArg, n: u64) -> Result<f64> {
    let p = route.prime();
    match k {
        GammaArg::Rational(k) => {
            let (r1, rp) = route_exponents(route, k);
            let spec = PrimeLevelSpec::new(p, r1, rp)?.eta_spec();
            let s = eta_quotient_series(&spec, n as usize)?;
            Ok(to_f64(&s.coeffs[n as usize]))
        }
        GammaArg::Real(k) => {
            let (r1, rp) = match route {
                Route::P3 => (3.0 * k, -k),
                _ => (4.0 * k, -2.0 * k),
            };
            Ok(eta_coefficient_real(p, r1, rp, n as usize))
        }
    }
}

/// Exact `A_p(n)` for rational `k`.
pub fn route_coefficient_exact(route: Route, k: &Rational, n: u64) -> Result<Rational> {
    let (r1, rp) = route_exponents(route, k);
    let spec = PrimeLevelSpec::new(route.prime(), r1, rp)?.eta_spec();
    Ok(eta_quotient_series(&spec, n as usize)?.coeffs[n as usize].clone())
}

fn route_kernel(route: Route, k0: &GammaArg) -> Result<InftySum> {
    let p = route.prime() as i64;
    let weights = match k0 {
        GammaArg::Rational(k) => {
            let (r1, rp) = route_exponents(route, k);
            let den = k.denom().to_i128().filter(|d| *d < 1 << 40);
            let num = |r: &Rational| {
                (r * Rational::from_integer(k.denom().clone()))
                    .to_integer()
                    .to_i128()
            };
            match (num(&r1), num(&rp), den) {
                (Some(u1), Some(up), Some(den)) if u1.abs() < 1 << 40 => {
                    Weights::Exact { u1, up, den }
                }
                _ => {
                    return Err(Error::Overflow(
                        "weight denominator too large for exact phases",
                    ))
                }
            }
        }
        GammaArg::Real(k) => match route {
            Route::P3 => Weights::Real {
                r1: 3.0 * k,
                rp: -k,
            },
            _ => Weights::Real {
                r1: 4.0 * k,
                rp: -2.0 * k,
            },
        },
    };
    Ok(InftySum {
        p,
        n_inf: 0,
        weights,
    })
}

/// `sum_{c <= c_max} c^{-k} sum_d e(nd/(pc) - ...)` for `k` in the route's
/// window, with the summed term weights `sum c^{-k} * #terms`.
pub fn raw_series(route: Route, k: &GammaArg, n: u64, c_max: u64) -> Result<(Complex64, f64)> {
    if route == Route::Auto {
        return Err(Error::InvalidParameter(
            "raw series needs an explicit route".into(),
        ));
    }
    let kernel = route_kernel(route, k)?;
    let (sums, terms) = sum_over_moduli(c_max, k.to_f64(), &[n as i64], |c, ns| kernel.sums(c, ns));
    Ok((sums[0], terms))
}

/// `Gamma(k)` from the truncated exponential-sum series.
pub fn gamma_series(req: &GammaRequest) -> Result<GammaResult> {
    if req.c_max == 0 {
        return Err(Error::InvalidParameter("c_max must be positive".into()));
    }
    if req.n_choice == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    if !(24..=53).contains(&req.precision) {
        return Err(Error::InvalidParameter(format!(
            "precision {} outside 24..=53",
            req.precision
        )));
    }
    if req.extrapolate && req.c_max < 2 {
        return Err(Error::InvalidParameter(
            "extrapolation needs c_max >= 2".into(),
        ));
    }
    let red = gamma_reduce(&req.k, req.route)?;
    let route = red.route;
    let p = route.prime();
    let n = req.n_choice;
    let a_n = route_coefficient(route, &red.k0, n)?;
    if a_n == 0.0 {
        return Err(Error::Precondition(format!(
            "A_{p}({n}) vanishes for k = {}",
            red.k0
        )));
    }
    let k = red.k0.to_f64();
    let (sum, terms) = raw_series(route, &red.k0, n, req.c_max)?;
    let mult = red.multiplier.to_f64();
    // (2 pi)^k n^{k-1} / A_p(n) * p^{-k}
    let pref = (2.0 * PI).powf(k) * (n as f64).powf(k - 1.0) / a_n * (p as f64).powf(-k) * mult;
    let mut total = sum;
    if req.extrapolate {
        let (half, _) = raw_series(route, &red.k0, n, req.c_max / 2)?;
        let x = (2.0f64).powf(k - 2.0);
        total = (total * x - half) / (x - 1.0);
    }
    let value = total * pref;
    let err = pref.abs() * terms * rounding(req.precision) + value.norm() * 1e-14;
    Ok(GammaResult {
        k: req.k.clone(),
        route,
        n,
        k0: red.k0,
        multiplier: red.multiplier,
        value: ComplexApprox::new(value, err),
        tail_bound: pref.abs() * crude_tail(p as f64, k, req.c_max),
        extrapolated: req.extrapolate,
        c_max: req.c_max,
    })
}

/// `coeff * pi^pi_exp * 2^two_exp * 3^three_exp` with rational exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Rational,
    pub pi_exp: Rational,
    pub two_exp: Rational,
    pub three_exp: Rational,
}

impl Monomial {
    pub fn to_f64(&self) -> f64 {
        to_f64(&self.coeff)
            * PI.powf(to_f64(&self.pi_exp))
            * 2f64.powf(to_f64(&self.two_exp))
            * 3f64.powf(to_f64(&self.three_exp))
    }
}

/// Prefactor in front of `sum_c c^{-k} sum_d` for rational `k` in the
/// route's window, as an exact monomial.
pub fn series_prefactor(route: Route, k: &Rational, n: u64) -> Result<Monomial> {
    let route = match route {
        Route::Auto => {
            return Err(Error::InvalidParameter(
                "prefactor needs an explicit route".into(),
            ))
        }
        r => r,
    };
    let a_n = route_coefficient_exact(route, k, n)?;
    if a_n.is_zero() {
        return Err(Error::Precondition(format!("A({n}) vanishes for k = {k}")));
    }
    // (2 pi)^k n^{k-1} / A_p(n) * p^{-k}; n is written through its 2- and 3-parts only
    let mut rest = n;
    let (mut e2, mut e3) = (0i64, 0i64);
    while rest % 2 == 0 {
        rest /= 2;
        e2 += 1;
    }
    while rest % 3 == 0 {
        rest /= 3;
        e3 += 1;
    }
    if rest != 1 {
        return Err(Error::InvalidParameter(format!(
            "n = {n} has prime factors other than 2 and 3"
        )));
    }
    let km1 = k - int(1);
    let mut two = k + &km1 * int(e2);
    let mut three = &km1 * int(e3);
    match route {
        Route::P3 => three -= k,
        _ => two -= k,
    }
    Ok(Monomial {
        coeff: Rational::one() / a_n,
        pi_exp: k.clone(),
        two_exp: two,
        three_exp: three,
    })
}

/// The two closed-form prefactors printed for `Gamma(8/3)` and `Gamma(15/7)`.
pub fn printed_prefactors() -> [(Rational, Monomial); 2] {
    [
        (
            rat(8, 3),
            Monomial {
                coeff: rat(-3, 32),
                pi_exp: rat(8, 3),
                two_exp: int(0),
                three_exp: int(0),
            },
        ),
        (
            // (49/540) (2 pi / 3)^{15/7} 2^{8/7}
            rat(15, 7),
            Monomial {
                coeff: rat(49, 540),
                pi_exp: rat(15, 7),
                two_exp: rat(15, 7) + rat(8, 7),
                three_exp: rat(-15, 7),
            },
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        assert!((gamma_reference_f64(4.0).unwrap() - 6.0).abs() < 1e-12);
        assert!((gamma_reference_f64(0.5).unwrap() - PI.sqrt()).abs() < 1e-13);
        assert!((gamma_reference_f64(8.0 / 3.0).unwrap() - 1.504_575_488_251_556_6).abs() < 1e-12);
        let g23 = gamma_reference_f64(2.0 / 3.0).unwrap();
        assert!(
            (gamma_reference_f64(8.0 / 3.0).unwrap() - g23 * (2.0 / 3.0) * (5.0 / 3.0)).abs()
                < 1e-13
        );
        assert!((gamma_reference_f64(-0.5).unwrap() + 2.0 * PI.sqrt()).abs() < 1e-12);
        assert!(gamma_reference_f64(0.0).is_err());
        assert!(gamma_reference_f64(-3.0).is_err());
        assert!(gamma_reference(&GammaArg::Rational(int(-2)), 53).is_err());
    }

    #[test]
    fn reduction_examples() {
        let r = gamma_reduce(&GammaArg::Rational(rat(15, 7)), Route::P3).unwrap();
        assert_eq!(
            (r.k0, r.multiplier),
            (GammaArg::Rational(rat(15, 7)), Multiplier::Exact(int(1)))
        );
        let r = gamma_reduce(&GammaArg::Rational(int(1)), Route::P3).unwrap();
        assert_eq!(
            (r.k0, r.multiplier),
            (GammaArg::Rational(int(3)), Multiplier::Exact(rat(1, 2)))
        );
        let r = gamma_reduce(&GammaArg::Rational(rat(25, 3)), Route::P3).unwrap();
        let expected = rat(22, 3) * rat(19, 3) * rat(16, 3) * rat(13, 3) * rat(10, 3) * rat(7, 3);
        assert_eq!(
            (r.k0, r.multiplier),
            (GammaArg::Rational(rat(7, 3)), Multiplier::Exact(expected))
        );
        let r = gamma_reduce(&GammaArg::Rational(rat(8, 3)), Route::Auto).unwrap();
        assert_eq!(r.route, Route::P3);
        let r = gamma_reduce(&GammaArg::Rational(rat(7, 2)), Route::Auto).unwrap();
        assert_eq!((r.route, r.k0), (Route::P2, GammaArg::Rational(rat(7, 2))));
        let r = gamma_reduce(&GammaArg::Rational(rat(1, 2)), Route::Auto).unwrap();
        assert_eq!((r.route, r.k0), (Route::P2, GammaArg::Rational(rat(7, 2))));
        assert!(gamma_reduce(&GammaArg::Rational(int(0)), Route::P2).is_err());
        assert!(gamma_reduce(&GammaArg::Real(-4.0), Route::P2).is_err());
        assert!(gamma_reduce(&GammaArg::Rational(int(100_000)), Route::P2).is_err());
    }

    #[test]
    fn reduction_respects_recurrence() {
        for k in [rat(-7, 2), rat(1, 3), rat(5, 2), rat(9, 2), rat(31, 4)] {
            for route in [Route::P2, Route::P3] {
                let a = gamma_reduce(&GammaArg::Rational(k.clone()), route).unwrap();
                let b = gamma_reduce(&GammaArg::Rational(&k + int(1)), route).unwrap();
                if a.k0 == b.k0 {
                    let (Multiplier::Exact(ma), Multiplier::Exact(mb)) =
                        (a.multiplier, b.multiplier)
                    else {
                        unreachable!()
                    };
                    assert_eq!(mb, &k * ma, "k = {k}");
                }
            }
        }
    }

    #[test]
    fn real_coefficients_match_exact() {
        for (route, k) in [
            (Route::P2, rat(8, 3)),
            (Route::P3, rat(15, 7)),
            (Route::P2, int(3)),
        ] {
            for n in 1..6 {
                let exact = to_f64(&route_coefficient_exact(route, &k, n).unwrap());
                let real = route_coefficient(route, &GammaArg::Real(to_f64(&k)), n).unwrap();
                assert!(
                    (exact - real).abs() <= 1e-9 * exact.abs().max(1.0),
                    "{route} {k} {n}"
                );
            }
        }
        assert_eq!(
            route_coefficient_exact(Route::P3, &rat(15, 7), 2).unwrap(),
            rat(540, 49)
        );
        assert_eq!(
            route_coefficient_exact(Route::P2, &rat(8, 3), 1).unwrap(),
            rat(-32, 3)
        );
    }

    #[test]
    fn printed_prefactors_match_general_form() {
        let [(k1, m1), (k2, m2)] = printed_prefactors();
        assert_eq!(series_prefactor(Route::P2, &k1, 1).unwrap(), m1);
        assert_eq!(series_prefactor(Route::P3, &k2, 2).unwrap(), m2);
    }

    #[test]
    fn parse_arguments() {
        assert_eq!(
            GammaArg::parse("8/3").unwrap(),
            GammaArg::Rational(rat(8, 3))
        );
        assert_eq!(GammaArg::parse("2.5").unwrap(), GammaArg::Real(2.5));
        assert!(GammaArg::parse("x").is_err());
        assert_eq!("P3".parse::<Route>().unwrap(), Route::P3);
    }
}
