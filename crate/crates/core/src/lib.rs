//! Rational weight Eisenstein series attached to eta quotients.

pub mod arith;
pub mod cover;
pub mod eisenstein;
pub mod error;
pub mod eta;
pub mod gamma;
pub mod multiplier;
pub mod par;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
