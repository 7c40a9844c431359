use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },
    #[error("no sign change of J_{alpha} found for t <= {limit}")]
    SearchFailure { alpha: f64, limit: f64 },
    #[error("Green function is singular at x = y")]
    Singular,
    #[error("exponent pair not admissible: {0}")]
    Admissibility(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("source is not zonal about the evaluation axis; use the Monte Carlo route")]
    NotZonal,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
