//! q-expansions and values of eta quotients.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{divisors, int, to_f64, ComplexApprox, Rational};
use crate::error::{Error, Result};
use crate::multiplier::EtaQuotientSpec;
use crate::report::{ser_rational, ser_rationals};

/// `q^offset * sum_{i <= N} coeffs[i] q^i + O(q^{offset + N + 1})`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FracSeries {
    #[serde(serialize_with = "ser_rational")]
    pub offset: Rational,
    #[serde(serialize_with = "ser_rationals")]
    pub coeffs: Vec<Rational>,
}

impl FracSeries {
    pub fn new(offset: Rational, coeffs: Vec<Rational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series keeps at least its constant term"
        );
        FracSeries { offset, coeffs }
    }

    /// The constant series `1` known to order `n`.
    pub fn one(n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[0] = Rational::one();
        FracSeries::new(Rational::zero(), coeffs)
    }

    /// Highest index `N` whose coefficient is known.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^{offset + i}`, `None` beyond the truncation.
    pub fn coeff(&self, i: usize) -> Option<&Rational> {
        self.coeffs.get(i)
    }

    /// Product, truncated to the smaller of the two orders.
    pub fn mul(&self, other: &FracSeries) -> FracSeries {
        let n = self.truncation().min(other.truncation());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        FracSeries::new(&self.offset + &other.offset, out)
    }

    /// `f(q^m)`, keeping the truncation order.
    pub fn dilate(&self, m: usize) -> FracSeries {
        let n = self.truncation();
        let mut out = vec![Rational::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * m > n {
                break;
            }
            out[i * m] = c.clone();
        }
        FracSeries::new(&self.offset * int(m as i64), out)
    }

    pub fn truncate(&self, n: usize) -> FracSeries {
        let n = n.min(self.truncation());
        FracSeries::new(self.offset.clone(), self.coeffs[..=n].to_vec())
    }
}

/// `eta(tau) = q^{1/24} prod (1 - q^n)` to order `N`, via the pentagonal number theorem.
pub fn eta_integer_series(terms: usize) -> Result<FracSeries> {
    if terms == 0 {
        return Err(Error::InvalidParameter(
            "series order must be at least 1".into(),
        ));
    }
    let mut coeffs = vec![Rational::zero(); terms + 1];
    for k in 0i64.. {
        let first = k * (3 * k - 1) / 2;
        if first as usize > terms {
            break;
        }
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        coeffs[first as usize] = sign.clone();
        if k > 0 {
            let second = k * (3 * k + 1) / 2;
            if second as usize <= terms {
                coeffs[second as usize] = sign;
            }
        }
    }
    Ok(FracSeries::new(
        Rational::new(BigInt::one(), BigInt::from(24)),
        coeffs,
    ))
}

/// `f^r` for a series with constant term 1, via `f g' = r f' g`. The offset is left at zero.
pub fn series_rational_power(f: &FracSeries, r: &Rational) -> Result<FracSeries> {
    if !f.coeffs[0].is_one() {
        return Err(Error::Precondition(format!(
            "rational powers need constant term 1, got {}",
            f.coeffs[0]
        )));
    }
    let n = f.truncation();
    let mut g = vec![Rational::zero(); n + 1];
    g[0] = Rational::one();
    let r1 = r + Rational::one();
    for m in 1..=n {
        // m g_m = sum_{j=1}^m ((r+1) j - m) f_j g_{m-j}
        let mut acc = Rational::zero();
        for j in 1..=m {
            if f.coeffs[j].is_zero() || g[m - j].is_zero() {
                continue;
            }
            let w = &r1 * int(j as i64) - int(m as i64);
            acc += w * &f.coeffs[j] * &g[m - j];
        }
        g[m] = acc / int(m as i64);
    }
    Ok(FracSeries::new(Rational::zero(), g))
}

/// `q^{sum n r_n / 24} sum_n A(n) q^n`, exact up to `q^{offset + N}`.
///
/// Uses `q (log f)' = -sum_{n | N} n r_n sum_j sigma_1(j) q^{nj}`.
pub fn eta_quotient_series(spec: &EtaQuotientSpec, terms: usize) -> Result<FracSeries> {
    if terms == 0 {
        return Err(Error::InvalidParameter(
            "series order must be at least 1".into(),
        ));
    }
    let sigma1: Vec<i64> = (0..=terms as u64)
        .map(|j| {
            if j == 0 {
                0
            } else {
                divisors(j).iter().sum::<u64>() as i64
            }
        })
        .collect();
    let mut log_deriv = vec![Rational::zero(); terms + 1];
    for (n, r) in spec.exponents() {
        let n = n as usize;
        let nr = r * int(n as i64);
        let mut j = 1;
        while n * j <= terms {
            log_deriv[n * j] -= &nr * int(sigma1[j]);
            j += 1;
        }
    }
    let mut a = vec![Rational::zero(); terms + 1];
    a[0] = Rational::one();
    for k in 1..=terms {
        let mut acc = Rational::zero();
        for j in 1..=k {
            if !log_deriv[j].is_zero() && !a[k - j].is_zero() {
                acc += &log_deriv[j] * &a[k - j];
            }
        }
        a[k] = acc / int(k as i64);
    }
    Ok(FracSeries::new(spec.weighted_sum() / int(24), a))
}

/// Order of vanishing at the cusp `a/c`: `(1/24) sum r_n gcd(n, c)^2 / n`.
pub fn order_at_cusp(spec: &EtaQuotientSpec, a: i64, c: i64) -> Result<Rational> {
    if c <= 0 || a.gcd(&c) != 1 {
        return Err(Error::Precondition(format!(
            "cusp {a}/{c} needs c > 0 and gcd(a, c) = 1"
        )));
    }
    let mut acc = Rational::zero();
    for (n, r) in spec.exponents() {
        let g = (n as i64).gcd(&c);
        acc += r * Rational::new(BigInt::from(g * g), BigInt::from(n));
    }
    Ok(acc / int(24))
}

/// `log eta(tau)` on the branch `pi i tau / 12 + sum log(1 - q^m)`, with an
/// absolute error bound for the truncated sum.
pub fn log_eta(tau: Complex64, precision: u32) -> Result<(Complex64, f64)> {
    if !(tau.im > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tau = {tau} is not in the upper half plane"
        )));
    }
    if !(24..=53).contains(&precision) {
        return Err(Error::InvalidParameter(format!(
            "precision {precision} bits outside the supported binary64 range 24..=53"
        )));
    }
    let unit = (2.0f64).powi(1 - precision as i32);
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let q = (two_pi_i * tau).exp();
    let abs_q = q.norm();
    let mut acc = Complex64::new(0.0, PI / 12.0) * tau;
    let mut z = q;
    let mut abs_z = abs_q;
    let mut terms = 0usize;
    let mut sum = Complex64::zero();
    loop {
        // remaining tail: sum_{m>=0} |z| |q|^m / (1 - |z|)
        let tail = abs_z / ((1.0 - abs_z) * (1.0 - abs_q));
        if tail < unit * 1e-3 {
            let rounding = unit * (terms as f64 + 4.0) * (1.0 + sum.norm());
            acc += sum;
            return Ok((acc, tail + rounding + unit * acc.norm()));
        }
        sum += (-z).ln_1p();
        terms += 1;
        z *= q;
        abs_z = z.norm();
    }
}

trait Ln1p {
    fn ln_1p(self) -> Complex64;
}

impl Ln1p for Complex64 {
    /// `log(1 + w)` for `|w| < 1`, accurate for small `w`.
    fn ln_1p(self) -> Complex64 {
        let w = self;
        if w.norm() < 1e-4 {
            // w - w^2/2 + w^3/3 - w^4/4
            let w2 = w * w;
            w - w2 / 2.0 + w2 * w / 3.0 - w2 * w2 / 4.0
        } else {
            (Complex64::new(1.0, 0.0) + w).ln()
        }
    }
}

/// `prod eta(n tau)^{r_n}` evaluated numerically.
pub fn eval_eta_quotient(
    spec: &EtaQuotientSpec,
    tau: Complex64,
    precision: u32,
) -> Result<ComplexApprox> {
    let mut log = Complex64::zero();
    let mut log_err = 0.0;
    for (n, r) in spec.exponents() {
        let (l, e) = log_eta(tau * n as f64, precision)?;
        let rf = to_f64(r);
        log += l * rf;
        log_err += rf.abs() * e;
    }
    if spec.exponents().next().is_none() {
        log_eta(tau, precision)?;
        return Ok(ComplexApprox::exact(Complex64::new(1.0, 0.0)));
    }
    let value = log.exp();
    let unit = (2.0f64).powi(1 - precision as i32);
    let err = value.norm() * (log_err.exp_m1() + unit);
    Ok(ComplexApprox::new(value, err))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn eta_examples() {
        let e = eta_integer_series(5).unwrap();
        assert_eq!(e.offset, rat(1, 24));
        assert_eq!(e.coeffs, ints(&[1, -1, -1, 0, 0, 1]));
        assert_eq!(eta_integer_series(1).unwrap().coeffs, ints(&[1, -1]));
        assert!(eta_integer_series(0).is_err());
    }

    #[test]
    fn power_examples() {
        let f = FracSeries::new(int(0), ints(&[1, -1, 0, 0]));
        assert_eq!(
            series_rational_power(&f, &int(0)).unwrap().coeffs,
            ints(&[1, 0, 0, 0])
        );
        assert_eq!(
            series_rational_power(&f, &int(2)).unwrap().coeffs,
            ints(&[1, -2, 1, 0])
        );
        // (1-q)^{1/2} = 1 - q/2 - q^2/8 - q^3/16
        assert_eq!(
            series_rational_power(&f, &rat(1, 2)).unwrap().coeffs,
            vec![int(1), rat(-1, 2), rat(-1, 8), rat(-1, 16)]
        );
        let bad = FracSeries::new(int(0), ints(&[2, 1]));
        assert!(series_rational_power(&bad, &int(2)).is_err());
    }

    #[test]
    fn cusp_orders() {
        let s = EtaQuotientSpec::new(3, [(1, int(9)), (3, int(-3))]).unwrap();
        assert_eq!(order_at_cusp(&s, 1, 1).unwrap(), rat(1, 3));
        assert_eq!(order_at_cusp(&s, 1, 3).unwrap(), int(0));
        let d = EtaQuotientSpec::new(1, [(1, int(24))]).unwrap();
        for (a, c) in [(1, 1), (2, 5), (-3, 7)] {
            assert_eq!(order_at_cusp(&d, a, c).unwrap(), int(1));
        }
        assert!(order_at_cusp(&s, 2, 4).is_err());
    }

    #[test]
    fn eta_at_i() {
        let s = EtaQuotientSpec::new(1, [(1, int(1))]).unwrap();
        let v = eval_eta_quotient(&s, Complex64::new(0.0, 1.0), 53).unwrap();
        assert!((v.re - 0.768_225_422_326_056_7).abs() < 1e-14);
        assert!(v.im.abs() < 1e-15 && v.err < 1e-13);
        let empty = EtaQuotientSpec::new(1, []).unwrap();
        let one = eval_eta_quotient(&empty, Complex64::new(0.2, 0.5), 53).unwrap();
        assert_eq!((one.re, one.im), (1.0, 0.0));
        assert!(eval_eta_quotient(&s, Complex64::new(0.2, -0.5), 53).is_err());
    }
}
