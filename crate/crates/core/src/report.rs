//! Serialization helpers shared by the JSON reports.

use serde::Serializer;

use crate::arith::Rational;

/// Serializes a rational as the string `"p/q"` (or `"p"` for integers).
pub fn ser_rational<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn ser_rationals<S: Serializer>(xs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}
