//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A brute-force enumeration would exceed its hard size bound.
    #[error("enumeration refused: {0}")]
    EnumerationBound(String),

    /// Parameters violate a precondition of the requested operation.
    #[error("parameter rejected: {0}")]
    Parameter(String),

    /// A Pochhammer symbol in a denominator vanished for the given partition
    /// while the numerator did not.
    #[error("vanishing denominator Pochhammer at kappa = {kappa} ({context})")]
    VanishingDenominator { kappa: String, context: String },

    /// A product of Gamma values did not reduce to rational * pi^(k/2).
    #[error("gamma product is not rational * pi^(k/2): {0}")]
    NonRationalGamma(String),

    /// Invalid series operation (division by a series with zero constant
    /// term, log of a series vanishing at 0, ...).
    #[error("series operation failed: {0}")]
    Series(String),
}

pub type Result<T> = std::result::Result<T, Error>;
