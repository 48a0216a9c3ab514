use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("arity mismatch: node has {found} children, signature arity is {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("unknown generator x{index} (signature has {available} generators)")]
    UnknownGenerator { index: usize, available: usize },
    #[error("unit word used in a non-unital signature")]
    UnitNotAllowed,
    #[error("wrong argument count: expected {expected}, got {found}")]
    WrongArgumentCount { expected: usize, found: usize },
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("variable z{0} has no assigned value")]
    UnassignedVariable(usize),
    #[error("identity is not homogeneous in every variable")]
    NonHomogeneous,
    #[error("degree {degree} exceeds the truncation degree {truncation}")]
    TruncationExceeded { degree: usize, truncation: usize },
    #[error("index {index} is outside the algebra's index set")]
    IndexOutOfRange { index: i64 },
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
