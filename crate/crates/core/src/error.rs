use thiserror::Error;

/// Errors produced by the laboratory's numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index {0} out of range (expected 1..=3)")]
    IndexOutOfRange(usize),

    #[error("matrix dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("unsupported matrix dimension {0} (expected 2 or 4)")]
    UnsupportedMatrixDim(usize),

    #[error("unsupported dimension `{0}`")]
    UnsupportedDimension(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("quadrature did not converge after {evaluations} evaluations (best estimate {value:e}, error {error_estimate:e})")]
    NonConvergence {
        value: f64,
        error_estimate: f64,
        evaluations: usize,
    },

    #[error("invalid Landau quantum numbers n={n}, l={l}: {reason}")]
    InvalidQuantumNumbers { n: i64, l: i64, reason: String },

    #[error("inconsistent field specification: eta3 implies B_eta = {implied:e} T, got {given:e} T")]
    InconsistentField { implied: f64, given: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
