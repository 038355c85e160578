//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A stated precondition does not hold (e.g. a coprimality assumption).
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A runtime size guard was exceeded.
    #[error("size guard exceeded: {0}")]
    Guard(String),
    /// Modular inverse requested for a non-invertible element.
    #[error("{0} is not invertible modulo {1}")]
    NotInvertible(i64, u64),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
    pub fn guard(msg: impl Into<String>) -> Self {
        Error::Guard(msg.into())
    }
}
