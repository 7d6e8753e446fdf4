//! The `D`-fold cover of `SL2(Z)` used for rational weights.
//!
//! An element is a matrix together with a branch of `(c tau + d)^(1/D)`,
//! written `eps * (c tau + d)^(1/D)` with `eps` a `D`-th root of unity and the
//! principal branch of the root. Composition multiplies the matrices and picks
//! up the cocycle `delta`, which compares the principal branches of the two
//! factors with that of the product.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::Phase;
use crate::error::{Error, Result};

/// Largest rounding residual accepted when snapping the cocycle to a root of unity.
pub const COCYCLE_TOLERANCE: f64 = 1e-6;

/// An integer 2x2 matrix of determinant one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Matrix2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Matrix2 {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det != 1 {
            return Err(Error::NotUnimodular { a, b, c, d, det });
        }
        Ok(Matrix2 { a, b, c, d })
    }

    pub const IDENTITY: Matrix2 = Matrix2 {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };
    pub const MINUS_IDENTITY: Matrix2 = Matrix2 {
        a: -1,
        b: 0,
        c: 0,
        d: -1,
    };
    pub const T: Matrix2 = Matrix2 {
        a: 1,
        b: 1,
        c: 0,
        d: 1,
    };
    pub const S: Matrix2 = Matrix2 {
        a: 0,
        b: -1,
        c: 1,
        d: 0,
    };

    pub fn mul(&self, o: &Matrix2) -> Result<Matrix2> {
        let entry = |x: i64, y: i64, z: i64, w: i64| -> Result<i64> {
            let v = x as i128 * y as i128 + z as i128 * w as i128;
            i64::try_from(v).map_err(|_| Error::Overflow("multiplying matrices"))
        };
        Ok(Matrix2 {
            a: entry(self.a, o.a, self.b, o.c)?,
            b: entry(self.a, o.b, self.b, o.d)?,
            c: entry(self.c, o.a, self.d, o.c)?,
            d: entry(self.c, o.b, self.d, o.d)?,
        })
    }

    pub fn inverse(&self) -> Matrix2 {
        Matrix2 {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// Möbius action on the upper half plane.
    pub fn act(&self, tau: Complex64) -> Complex64 {
        (tau * self.a as f64 + self.b as f64) / (tau * self.c as f64 + self.d as f64)
    }

    /// Automorphy factor `c tau + d`.
    pub fn j(&self, tau: Complex64) -> Complex64 {
        tau * self.c as f64 + self.d as f64
    }

    pub fn in_gamma0(&self, level: u64) -> bool {
        self.c.rem_euclid(level as i64) == 0
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}; {}, {}]", self.a, self.b, self.c, self.d)
    }
}

/// Element `(matrix, e(eps_index / order) * (c tau + d)^(1/order))` of the cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CoverElement {
    pub matrix: Matrix2,
    order: u64,
    eps_index: u64,
}

impl CoverElement {
    pub fn new(matrix: Matrix2, order: u64, eps_index: i64) -> Result<Self> {
        check_order(order)?;
        Ok(CoverElement {
            matrix,
            order,
            eps_index: eps_index.rem_euclid(order as i64) as u64,
        })
    }

    /// The cover order `D2`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// `eps = e(eps_index / order)`.
    pub fn eps_index(&self) -> u64 {
        self.eps_index
    }

    pub fn eps(&self) -> Phase {
        Phase::from_ratio(self.eps_index as i64, self.order as i64)
    }

    pub fn identity(order: u64) -> Result<Self> {
        lift(1, 0, 0, 1, order)
    }
}

fn check_order(order: u64) -> Result<()> {
    if order == 0 || order % 2 == 1 || order > i64::MAX as u64 {
        return Err(Error::InvalidCoverOrder(order));
    }
    Ok(())
}

/// The canonical lift `(gamma, 1)`.
pub fn lift(a: i64, b: i64, c: i64, d: i64, order: u64) -> Result<CoverElement> {
    CoverElement::new(Matrix2::new(a, b, c, d)?, order, 0)
}

pub fn lift_matrix(m: Matrix2, order: u64) -> Result<CoverElement> {
    CoverElement::new(m, order, 0)
}

/// Winding number `m` with `Arg j1(g2 tau) + Arg j2(tau) - Arg j12(tau) = 2 pi m`,
/// and the distance of `exp(i w / order)` from the snapped root of unity.
pub fn cocycle_winding(
    g1: &Matrix2,
    g2: &Matrix2,
    order: u64,
    tau: Complex64,
) -> Result<(i64, f64)> {
    let g12 = g1.mul(g2)?;
    let inner = g2.act(tau);
    let j1 = inner * g1.c as f64 + g1.d as f64;
    let j2 = g2.j(tau);
    let j12 = g12.j(tau);
    let w = j1.arg() + j2.arg() - j12.arg();
    let m = (w / TAU).round();
    let theta = w / order as f64;
    let snapped = TAU * m / order as f64;
    let residual = (Complex64::from_polar(1.0, theta) - Complex64::from_polar(1.0, snapped)).norm();
    Ok((m as i64, residual))
}

/// Group law of the cover, with the cocycle evaluated at `tau = i`.
pub fn compose(g1: &CoverElement, g2: &CoverElement) -> Result<CoverElement> {
    compose_at(g1, g2, Complex64::new(0.0, 1.0))
}

/// [`compose`] with the cocycle evaluated at an arbitrary point of the upper half plane.
pub fn compose_at(g1: &CoverElement, g2: &CoverElement, tau: Complex64) -> Result<CoverElement> {
    if g1.order != g2.order {
        return Err(Error::CoverOrderMismatch(g1.order, g2.order));
    }
    let (m, residual) = cocycle_winding(&g1.matrix, &g2.matrix, g1.order, tau)?;
    if !(residual < COCYCLE_TOLERANCE) {
        return Err(Error::CocycleResidual { residual });
    }
    let matrix = g1.matrix.mul(&g2.matrix)?;
    let eps = g1.eps_index as i64 + g2.eps_index as i64 + m;
    CoverElement::new(matrix, g1.order, eps)
}

/// Inverse in the cover: `compose(g, invert(g))` is the identity with `eps = 1`.
pub fn invert(g: &CoverElement) -> Result<CoverElement> {
    let inv = g.matrix.inverse();
    let (m, residual) = cocycle_winding(&g.matrix, &inv, g.order, Complex64::new(0.0, 1.0))?;
    if !(residual < COCYCLE_TOLERANCE) {
        return Err(Error::CocycleResidual { residual });
    }
    CoverElement::new(inv, g.order, -(g.eps_index as i64) - m)
}

/// Product of a word of cover elements, left to right.
pub fn compose_all<'a>(
    order: u64,
    word: impl IntoIterator<Item = &'a CoverElement>,
) -> Result<CoverElement> {
    let mut acc = CoverElement::identity(order)?;
    for g in word {
        acc = compose(&acc, g)?;
    }
    Ok(acc)
}

/// `g^n` for any integer `n`.
pub fn power(g: &CoverElement, n: i64) -> Result<CoverElement> {
    let base = if n < 0 { invert(g)? } else { *g };
    let mut acc = CoverElement::identity(g.order)?;
    for _ in 0..n.unsigned_abs() {
        acc = compose(&acc, &base)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_examples() {
        let t = lift(1, 1, 0, 1, 18).unwrap();
        assert_eq!(t.eps_index(), 0);
        assert!(lift(0, -1, 1, 0, 4).is_ok());
        assert!(lift(7, -2, 11, -3, 18).is_ok());
        assert!(matches!(
            lift(1, 1, 1, 1, 4),
            Err(Error::NotUnimodular { .. })
        ));
        assert!(matches!(
            lift(1, 0, 0, 1, 3),
            Err(Error::InvalidCoverOrder(3))
        ));
        assert!(matches!(
            lift(1, 0, 0, 1, 0),
            Err(Error::InvalidCoverOrder(0))
        ));
    }

    #[test]
    fn compose_examples() {
        for order in [2u64, 4, 6, 18] {
            let minus = lift(-1, 0, 0, -1, order).unwrap();
            let sq = compose(&minus, &minus).unwrap();
            assert_eq!(sq.matrix, Matrix2::IDENTITY);
            assert_eq!(sq.eps(), Phase::from_ratio(1, order as i64));

            let t = lift(1, 1, 0, 1, order).unwrap();
            let t2 = compose(&t, &t).unwrap();
            assert_eq!(t2.matrix, Matrix2::new(1, 2, 0, 1).unwrap());
            assert_eq!(t2.eps_index(), 0);

            let s = lift(0, -1, 1, 0, order).unwrap();
            let s2 = compose(&s, &s).unwrap();
            assert_eq!(s2.matrix, Matrix2::MINUS_IDENTITY);
            assert_eq!(s2.eps_index(), 0);
        }
    }

    #[test]
    fn mismatched_orders() {
        let a = lift(1, 1, 0, 1, 4).unwrap();
        let b = lift(1, 1, 0, 1, 6).unwrap();
        assert_eq!(compose(&a, &b), Err(Error::CoverOrderMismatch(4, 6)));
    }

    #[test]
    fn inverses() {
        for order in [2u64, 18] {
            for m in [
                Matrix2::T,
                Matrix2::S,
                Matrix2::MINUS_IDENTITY,
                Matrix2::new(7, -2, 11, -3).unwrap(),
                Matrix2::new(-3, 2, -11, 7).unwrap(),
            ] {
                let g = CoverElement::new(m, order, 5).unwrap();
                let inv = invert(&g).unwrap();
                let id = compose(&g, &inv).unwrap();
                assert_eq!(id, CoverElement::identity(order).unwrap());
                let id2 = compose(&inv, &g).unwrap();
                assert_eq!(id2, CoverElement::identity(order).unwrap());
            }
        }
        let t = lift(1, 1, 0, 1, 18).unwrap();
        assert_eq!(invert(&t).unwrap(), lift(1, -1, 0, 1, 18).unwrap());
    }

    #[test]
    fn s_has_order_4d() {
        // S^4 = (I, e(1/D)) so S has order 4D in the D-cover
        let order = 6u64;
        let s = lift(0, -1, 1, 0, order).unwrap();
        let s4 = power(&s, 4).unwrap();
        assert_eq!(s4.matrix, Matrix2::IDENTITY);
        assert_eq!(s4.eps(), Phase::from_ratio(1, order as i64));
        assert_eq!(
            power(&s, 4 * order as i64).unwrap(),
            CoverElement::identity(order).unwrap()
        );
    }
}
