use thiserror::Error;

/// Errors shared across the whole library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible (divisible by {factor})")]
    ReducibleModulus { factor: String },
    #[error("modulus degree mismatch: expected {expected} coefficients, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("field parameters mismatch")]
    ParamsMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("zero vector has no leading monomial")]
    ZeroVector,
    #[error("shape mismatch: expected {expected} entries, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("position {pos} out of range 1..={len}")]
    PositionOutOfRange { pos: usize, len: usize },
    #[error("no reducer applies to the leading term")]
    NotReducible,
    #[error("all combination coefficients are zero")]
    AllZeroCoefficients,
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("semantic error for `{name}`: {msg}")]
    Semantic { name: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
