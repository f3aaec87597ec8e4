use thiserror::Error;

/// Errors produced by state construction, measures and scenario evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("zero vector cannot be normalized")]
    ZeroVector,
    #[error("state norm {0} is not within 1e-9 of 1")]
    NotNormalized(f64),
    #[error("unknown mode label `{0}`")]
    UnknownMode(String),
    #[error("duplicate mode label `{0}`")]
    DuplicateMode(String),
    #[error("empty mode selection")]
    EmptySelection,
    #[error("expected {expected} qubits, found {found}")]
    WrongQubitCount { expected: usize, found: usize },
    #[error("not a bijection on basis indices")]
    NotAPermutation,
    #[error("matrix is not an X state: entry ({row}, {col}) has magnitude {magnitude:e}")]
    NotXState { row: usize, col: usize, magnitude: f64 },
    #[error("invalid X-state parameters: {0}")]
    InvalidXState(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
