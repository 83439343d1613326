use thiserror::Error;

/// Errors raised by the exact algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid denominator: zero")]
    InvalidDenominator,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    Dimension { expected: usize, found: usize },
    #[error("empty ideal: at least one generator is required")]
    EmptyIdeal,
    #[error("unit ideal has no Rees valuations")]
    UnitIdeal,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("insufficient data: need at least {needed} values, got {found}")]
    InsufficientData { needed: usize, found: usize },
    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
