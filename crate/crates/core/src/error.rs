use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("scalar: {0}")]
    Scalar(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("symmetry mismatch: {0}")]
    Symmetry(String),
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("space mismatch: {0}")]
    Space(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{pointer}: {message}")]
    Schema { pointer: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
