//! Truncated multivariate power series over the rationals, plus an extension
//! by formal logarithm symbols.
//!
//! Every coefficient is an arbitrary-precision rational kept in lowest terms;
//! no floating point is used anywhere. Series are truncated by *total* degree:
//! a series of order `k` stores exactly the terms of total degree `<= k`, and
//! every operation is exact on that range. Zero coefficients are never stored,
//! so equality is structural and "vanishes up to order" is an emptiness check.

mod log;
mod multi;

pub use log::LogSeries;
pub use multi::MultiSeries;

use num::BigRational;
use thiserror::Error;

/// Errors from series constructions whose preconditions depend on the data
/// rather than on shapes (shape mismatches are programming errors and panic).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    /// Reciprocal or negative power of a series with zero constant term.
    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,
    /// `exp` of a series with nonzero constant term.
    #[error("exp requires a series with zero constant term")]
    NonzeroConstantTerm,
    /// `log` of a series whose constant term is not 1.
    #[error("log requires a series with constant term 1")]
    ConstantTermNotOne,
    /// Substitution of a series with nonzero constant term.
    #[error("substituted series must have zero constant term")]
    SubstitutionConstantTerm,
}

/// Shorthand used throughout the crate for exact rational coefficients.
pub type Coeff = BigRational;

/// Convenience constructor for a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Coeff {
    BigRational::new(num.into(), den.into())
}

/// Convenience constructor for an integer rational.
pub fn rat_int(num: i64) -> Coeff {
    BigRational::from_integer(num.into())
}
