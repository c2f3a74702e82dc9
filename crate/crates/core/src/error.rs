use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("tower construction failed: {0}")]
    Tower(String),
    #[error("prime {0} divides the index of the defining polynomial")]
    UnsupportedPrime(u64),
    #[error("prime {0} is ramified")]
    RamifiedPrime(u64),
    #[error("valuation of zero")]
    Valuation,
    #[error("normalization failed: {0}")]
    Normalize(String),
    #[error("geometry error: {0}")]
    Geometry(String),
    #[error("unsupported local case: {0}")]
    UnsupportedLocalCase(String),
    #[error("integer too large to factor: {0}")]
    Factorization(String),
    #[error("parse error in field `{field}`: {message}")]
    Parse { field: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
