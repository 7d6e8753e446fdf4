//! Multiplier systems of eta quotients `prod_{n | N} eta(n tau)^{r_n}` on the cover.
//!
//! [`chi_general`] works for any level through Dedekind sums. For prime
//! level there are two further closed forms: [`chi_special`] on four families
//! of explicit matrices, and [`chi_integer`] for integral exponents. The
//! three are kept independent so they can be checked against each other.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;

use crate::arith::{dedekind_sum, ext_gcd, int, is_prime, kronecker, rat, Phase, Rational};
use crate::cover::{CoverElement, Matrix2};
use crate::error::{Error, Result};
use crate::report::ser_rational;

/// Exponents `r_n`, `n | N`, of an eta quotient of level `N`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EtaQuotientSpec {
    level: u64,
    #[serde(serialize_with = "ser_exponents")]
    exponents: BTreeMap<u64, Rational>,
    #[serde(serialize_with = "ser_rational")]
    weight: Rational,
    cover_order: u64,
}

fn ser_exponents<S: serde::Serializer>(
    m: &BTreeMap<u64, Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(m.iter().map(|(n, r)| (n.to_string(), r.to_string())))
}

impl EtaQuotientSpec {
    /// Missing divisors get exponent zero; repeated keys are added up.
    pub fn new(level: u64, exponents: impl IntoIterator<Item = (u64, Rational)>) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidParameter("level must be positive".into()));
        }
        let mut map: BTreeMap<u64, Rational> = BTreeMap::new();
        for (n, r) in exponents {
            if n == 0 || level % n != 0 {
                return Err(Error::NotADivisor { n, level });
            }
            *map.entry(n).or_insert_with(Rational::zero) += r;
        }
        map.retain(|_, r| !r.is_zero());
        let weight = map.values().fold(Rational::zero(), |acc, r| acc + r) / int(2);
        // D = lcm of the denominators
        let d = map
            .values()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let cover_order = (d * 2u32)
            .to_u64()
            .filter(|&x| x <= i64::MAX as u64)
            .ok_or(Error::Overflow("computing the cover order"))?;
        Ok(EtaQuotientSpec {
            level,
            exponents: map,
            weight,
            cover_order,
        })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// The exponent `r_n` (zero for divisors not listed).
    pub fn exponent(&self, n: u64) -> Rational {
        self.exponents
            .get(&n)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.exponents.iter().map(|(n, r)| (*n, r))
    }

    /// Weight `k' = (1/2) sum r_n`.
    pub fn weight(&self) -> &Rational {
        &self.weight
    }

    /// Minimal even cover order `2D` with `D r_n` integral.
    pub fn cover_order(&self) -> u64 {
        self.cover_order
    }

    /// `sum_n n r_n`, which is 24 times the order at infinity.
    pub fn weighted_sum(&self) -> Rational {
        self.exponents
            .iter()
            .fold(Rational::zero(), |acc, (n, r)| acc + r * int(*n as i64))
    }
}

/// Level `p` quotient `eta(tau)^{r1} eta(p tau)^{rp}` with its cusp data.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrimeLevelSpec {
    pub p: u64,
    #[serde(serialize_with = "ser_rational")]
    pub r1: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub rp: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub n_inf: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub n_one: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub kprime: Rational,
    pub m_inf: u64,
    pub m_one: u64,
}

impl PrimeLevelSpec {
    pub fn new(p: u64, r1: Rational, rp: Rational) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let pr = int(p as i64);
        let n_inf = (&r1 + &pr * &rp) / int(24);
        let n_one = (&pr * &r1 + &rp) / int(24);
        let kprime = (&r1 + &rp) / int(2);
        let den = |x: &Rational| {
            x.denom()
                .to_u64()
                .ok_or(Error::Overflow("denominator of a cusp order"))
        };
        Ok(PrimeLevelSpec {
            p,
            m_inf: den(&n_inf)?,
            m_one: den(&n_one)?,
            r1,
            rp,
            n_inf,
            n_one,
            kprime,
        })
    }

    pub fn eta_spec(&self) -> EtaQuotientSpec {
        EtaQuotientSpec::new(self.p, [(1, self.r1.clone()), (self.p, self.rp.clone())])
            .expect("1 and p divide p")
    }

    pub fn cover_order(&self) -> u64 {
        self.eta_spec().cover_order()
    }

    pub fn exponents_integral(&self) -> bool {
        self.r1.is_integer() && self.rp.is_integer()
    }
}

/// `v(a, b, c, d)`: the character on the canonical lift, before the `eps` correction.
fn character_on_lift(spec: &EtaQuotientSpec, m: &Matrix2) -> Rational {
    let (a, b, c, d) = (m.a, m.b, m.c, m.d);
    let sum_nr = spec.weighted_sum();
    let k = spec.weight();
    if c == 0 {
        let shift = sum_nr * int(b) / int(24);
        return if a > 0 { shift } else { -shift - k / int(2) };
    }
    let lead = sum_nr * int(a + d) / int(24 * c);
    let mut dedekind = Rational::zero();
    for (n, r) in spec.exponents() {
        let n = n as i64;
        let s = if c > 0 {
            dedekind_sum(-d, c / n)
        } else {
            dedekind_sum(d, -c / n)
        };
        dedekind += r * s;
    }
    let quarter = k / int(4);
    if c > 0 {
        lead + dedekind / int(2) - quarter
    } else {
        lead + dedekind / int(2) + quarter
    }
}

/// `chi(g)` as a phase, for `g` in the cover of `Gamma0(N)`.
pub fn chi_general(spec: &EtaQuotientSpec, g: &CoverElement) -> Result<Phase> {
    check_element(spec.level(), spec.cover_order(), g)?;
    let v = character_on_lift(spec, &g.matrix);
    Ok(Phase::new(v - spec.weight() * int(g.eps_index() as i64)))
}

fn check_element(level: u64, order: u64, g: &CoverElement) -> Result<()> {
    if !g.matrix.in_gamma0(level) {
        return Err(Error::NotInGamma0 {
            c: g.matrix.c,
            level,
        });
    }
    if g.order() != order {
        return Err(Error::CoverOrderMismatch(g.order(), order));
    }
    Ok(())
}

/// Values at `T` and at the parabolic generator of the cusp `1/1`: `(n_inf, n_one)` mod 1.
pub fn chi_t_and_cusp1(spec: &PrimeLevelSpec) -> (Phase, Phase) {
    (
        Phase::new(spec.n_inf.clone()),
        Phase::new(spec.n_one.clone()),
    )
}

/// Parabolic generator `(1-p, p; -p, 1+p)` fixing the cusp `1`.
pub fn cusp1_generator(p: u64) -> Matrix2 {
    let p = p as i64;
    Matrix2 {
        a: 1 - p,
        b: p,
        c: -p,
        d: 1 + p,
    }
}

/// The explicit matrix of `family` (1..=4) with parameter `t`.
pub fn special_matrix(p: u64, family: u8, t: u64) -> Result<Matrix2> {
    let pi = p as i64;
    let ti = t as i64;
    let divides = |m: i64| t >= 1 && m > 0 && m % ti == 0;
    let bad = |what: &str| {
        Error::Precondition(format!(
            "family {family} needs t | {what}, got t = {t}, p = {p}"
        ))
    };
    let m = match family {
        1 if divides(pi - 1) => Matrix2::new(-ti, -1, pi, (pi - 1) / ti),
        1 => return Err(bad("p-1")),
        2 if divides(pi + 1) => Matrix2::new(ti, 1, pi, (pi + 1) / ti),
        2 => return Err(bad("p+1")),
        3 | 4 if p < 3 => return Err(Error::Precondition(format!("family {family} needs p >= 3"))),
        3 if divides(pi - 2) => Matrix2::new(-ti * (pi + 1) / 2, -(pi - 1) / 2, pi, (pi - 2) / ti),
        3 => return Err(bad("p-2")),
        4 if divides(pi + 2) => Matrix2::new(ti * (pi + 1) / 2, (pi + 3) / 2, pi, (pi + 2) / ti),
        4 => return Err(bad("p+2")),
        _ => return Err(Error::InvalidParameter(format!("unknown family {family}"))),
    };
    m
}

/// Recognises a matrix of one of the four families, returning `(family, t)`.
pub fn special_family_of(p: u64, m: &Matrix2) -> Option<(u8, u64)> {
    let pi = p as i64;
    if m.c != pi {
        return None;
    }
    let t = match m.a {
        a if a < 0 && m.b == -1 => (1u8, (-a) as u64),
        a if a > 0 && m.b == 1 => (2, a as u64),
        _ => {
            if p < 3 || (pi + 1) % 2 != 0 {
                return None;
            }
            let half = (pi + 1) / 2;
            if m.a < 0 && m.b == -(pi - 1) / 2 && (-m.a) % half == 0 {
                (3, ((-m.a) / half) as u64)
            } else if m.a > 0 && m.b == (pi + 3) / 2 && m.a % half == 0 {
                (4, (m.a / half) as u64)
            } else {
                return None;
            }
        }
    };
    match special_matrix(p, t.0, t.1) {
        Ok(x) if x == *m => Some(t),
        _ => None,
    }
}

/// Closed form of `chi` on the canonical lift of [`special_matrix`].
pub fn chi_special(spec: &PrimeLevelSpec, family: u8, t: u64) -> Result<Phase> {
    special_matrix(spec.p, family, t)?;
    let p = spec.p as i64;
    let ti = t as i64;
    let (r1, rp) = (&spec.r1, &spec.rp);
    let v = match family {
        1 => (r1 + rp) * rat(p - (ti * ti + 3 * ti + 1), 24 * ti),
        2 => (rp - r1) * rat(p + ti * ti - 3 * ti + 1, 24 * ti),
        3 => {
            r1 * rat(p - (3 * ti * ti + 6 * ti + 2), 48 * ti)
                + rp * rat((2 - ti * ti) * p - (ti * ti + 6 * ti + 4), 48 * ti)
        }
        _ => {
            r1 * rat(-p - (ti * ti - 6 * ti + 2), 48 * ti)
                + rp * rat((ti * ti + 2) * p + ti * ti - 6 * ti + 4, 48 * ti)
        }
    };
    Ok(Phase::new(v))
}

/// `x^e` for `x = +-1` as a phase.
fn sign_power(x: i32, e: &BigInt) -> Rational {
    if x < 0 && e.is_odd() {
        rat(1, 2)
    } else {
        Rational::zero()
    }
}

/// Kronecker-symbol form of `chi` for integral exponents with `n_inf` integral.
pub fn chi_integer(spec: &PrimeLevelSpec, g: &CoverElement) -> Result<Phase> {
    if !spec.exponents_integral() {
        return Err(Error::Precondition("exponents must be integers".into()));
    }
    if !spec.n_inf.is_integer() {
        return Err(Error::Precondition(format!(
            "n_inf = {} is not an integer",
            spec.n_inf
        )));
    }
    check_element(spec.p, spec.cover_order(), g)?;
    let Matrix2 { a, c, d, .. } = g.matrix;
    let rp = spec.rp.to_integer();
    let v = match spec.p {
        2 => {
            let sym = kronecker(c / 2, a);
            sign_power(sym, &rp)
                + Rational::from_integer(rp)
                    * Rational::new(
                        BigInt::from(a as i128 * (c as i128 / 2 - 1) + 1),
                        BigInt::from(8),
                    )
        }
        3 => {
            sign_power(kronecker(d, 3), &rp)
                - Rational::from_integer(rp)
                    * Rational::new(
                        BigInt::from(c as i128 * (a as i128 + d as i128)),
                        BigInt::from(9),
                    )
        }
        p => sign_power(kronecker(d, p as i64), &rp),
    };
    Ok(Phase::new(v - &spec.kprime * int(g.eps_index() as i64)))
}

/// `r1 in 2Z`, `r1 + rp in 4Z` and `p r1 + rp in 24Z`, after checking that `n_inf` is integral.
pub fn is_trivial_condition3(spec: &PrimeLevelSpec) -> Result<bool> {
    if !spec.n_inf.is_integer() {
        return Err(Error::Precondition(format!(
            "n_inf = {} must be an integer (chi(T) = 1)",
            spec.n_inf
        )));
    }
    let multiple = |x: Rational, m: i64| x.is_integer() && (x.to_integer() % m).is_zero();
    let p = int(spec.p as i64);
    Ok(multiple(spec.r1.clone(), 2)
        && multiple(&spec.r1 + &spec.rp, 4)
        && multiple(&p * &spec.r1 + &spec.rp, 24))
}

/// Random matrix of `Gamma0(level)` with `|c|, |d| <= bound` (roughly), including `c = 0` and negative entries.
pub fn random_gamma0<R: Rng + ?Sized>(level: u64, bound: i64, rng: &mut R) -> Matrix2 {
    let level = level as i64;
    let bound = bound.max(level);
    loop {
        let m = bound / level;
        let c = level * rng.gen_range(-m..=m);
        let d = rng.gen_range(-bound..=bound);
        let (g, x, y) = ext_gcd(d as i128, c as i128);
        if g != 1 {
            continue;
        }
        // a d - b c = 1 with a = x, b = -y, then move along the coset
        let shift = if c == 0 {
            rng.gen_range(-bound..=bound) as i128
        } else {
            rng.gen_range(-2..=2)
        };
        let a = x + shift * c as i128;
        let b = -y + shift * d as i128;
        if let (Ok(a), Ok(b)) = (i64::try_from(a), i64::try_from(b)) {
            if let Ok(mat) = Matrix2::new(a, b, c, d) {
                return mat;
            }
        }
    }
}

/// Random element of the cover of `Gamma0(level)` with uniformly random `eps`.
pub fn random_cover_element<R: Rng + ?Sized>(
    level: u64,
    order: u64,
    bound: i64,
    rng: &mut R,
) -> Result<CoverElement> {
    let m = random_gamma0(level, bound, rng);
    CoverElement::new(m, order, rng.gen_range(0..order as i64))
}

/// `true` when `chi` is trivial on every sampled element; a probe, not a proof.
pub fn probe_trivial<R: Rng + ?Sized>(
    spec: &PrimeLevelSpec,
    samples: usize,
    rng: &mut R,
) -> Result<bool> {
    let eta = spec.eta_spec();
    for _ in 0..samples {
        let g = random_cover_element(spec.p, eta.cover_order(), 1000, rng)?;
        if !chi_general(&eta, &g)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
