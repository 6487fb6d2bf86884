use thiserror::Error;

/// Errors raised by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("defining polynomial must have degree at least 2")]
    DegreeTooSmall,
    #[error("polynomial is reducible: factor {factor}")]
    Reducible { factor: String },
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    #[error("splitting context too small: {0}")]
    ContextTooSmall(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("capability unavailable: {0}")]
    Capability(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
