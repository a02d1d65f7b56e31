use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },
    #[error("domain error: {0}")]
    Domain(String),
    /// The instance is too large for an exhaustive procedure.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// No polynomial-time case applies; use the exhaustive oracle instead.
    #[error("polynomial-time solver not applicable: {0}")]
    NotApplicable(String),
    #[error("contract violated: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, Error>;
