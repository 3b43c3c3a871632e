use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("lattice coordinates must be positive, got ({r}, {s})")]
    ZeroCoordinate { r: u64, s: u64 },

    #[error("exponent b must be at least 1")]
    ZeroExponent,

    #[error("table bound must be at least 1")]
    EmptyTable,

    #[error("table bounds differ: {left} vs {right}")]
    BoundMismatch { left: usize, right: usize },

    #[error("table defined up to {available}, but {requested} was requested")]
    TableTooShort { available: usize, requested: usize },

    #[error("Dirichlet series argument must exceed {min}, got {s}")]
    ArgumentOutOfRange { s: f64, min: f64 },

    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(f64),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("insufficient sample: {found} points in sphere k={k}, need at least {required}")]
    InsufficientSample { k: u64, found: u64, required: u64 },

    #[error(transparent)]
    Pattern(#[from] crate::patterns::PatternError),

    #[error("factorization of {0} exceeded its time budget")]
    FactorizationTimeout(BigUint),
}
