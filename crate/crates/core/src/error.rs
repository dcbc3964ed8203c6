use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Lie type {family}{rank}: {reason}")]
    InvalidType {
        family: char,
        rank: usize,
        reason: &'static str,
    },

    #[error("weight has {got} coefficients but the root datum has rank {expected}")]
    WeightLength { expected: usize, got: usize },

    #[error("weight {0} is not self-dual, so it has no orthogonal/symplectic indicator")]
    NotSelfDual(String),

    #[error("dimension bound must be at least 1")]
    ZeroBound,

    #[error("{0}")]
    Precondition(String),

    #[error("exceptions line {line}: {reason}")]
    ExceptionRow { line: usize, reason: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{t} is divisible by {p}, so it has no multiplicative order")]
    NotCoprime { t: u64, p: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
