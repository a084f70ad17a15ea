use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: bad permutation, bad JSON, shape outside its box.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// The input is well formed but outside the operation's domain.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// An enumeration or iteration would exceed its configured cap.
    #[error("resource cap exceeded: {what} (limit {limit})")]
    Resource { what: String, limit: usize },
    /// A consistency check between two independent computations failed.
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn resource(what: impl Into<String>, limit: usize) -> Self {
        Error::Resource { what: what.into(), limit }
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
