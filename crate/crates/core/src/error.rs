use thiserror::Error;

/// Errors raised by the algebra, calculus, and variational layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("dimension {0} outside the supported range 1..=16")]
    DimensionOutOfRange(usize),

    #[error("grade mismatch: expected {expected}, found {found}")]
    GradeMismatch { expected: isize, found: isize },

    #[error("operands live in different metrics")]
    MetricMismatch,

    #[error("index list must be strictly increasing: {0:?}")]
    NotCanonical(Vec<usize>),

    #[error("{0}")]
    Domain(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
