use crate::rational::{ParseRationalError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("negative value {value} at index {index}")]
    NegativeValue { index: usize, value: Rational },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0}")]
    OutOfRange(String),
    #[error("ground set size {n} exceeds the cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("set function must be normalized (f(empty) = 0, f(ground) = 1)")]
    NotNormalized,
    #[error("set function is not monotone submodular")]
    NotMonotoneSubmodular,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal defect: {0}")]
    Defect(String),
}

impl From<ParseRationalError> for Error {
    fn from(e: ParseRationalError) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
