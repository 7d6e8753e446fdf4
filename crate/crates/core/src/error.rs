use thiserror::Error;

/// Errors raised by the number-theoretic engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix ({a}, {b}; {c}, {d}) has determinant {det}, expected 1")]
    NotUnimodular {
        a: i64,
        b: i64,
        c: i64,
        d: i64,
        det: i128,
    },

    #[error("cover order {0} must be a positive even integer")]
    InvalidCoverOrder(u64),

    #[error("cover orders differ: {0} vs {1}")]
    CoverOrderMismatch(u64, u64),

    #[error("cocycle residual {residual:e} exceeds tolerance; branch evaluation is inconsistent")]
    CocycleResidual { residual: f64 },

    #[error("integer overflow while {0}")]
    Overflow(&'static str),

    #[error("matrix with lower-left entry {c} is not in Gamma0({level})")]
    NotInGamma0 { c: i64, level: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{n} does not divide the level {level}")]
    NotADivisor { n: u64, level: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{0} is a pole of the Gamma function")]
    GammaPole(String),

    #[error("could not parse {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
