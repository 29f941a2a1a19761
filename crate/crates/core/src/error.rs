use thiserror::Error;

/// Error type shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Precondition violated by the caller (bad label, degree mismatch, ...).
    #[error("{0}")]
    Domain(String),
    /// An enumeration or closure exceeded its configured budget.
    #[error("budget exceeded: {0}")]
    Resource(String),
    /// An internal consistency check failed; signals a bug, not bad input.
    #[error("invariant violation: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Error {
        Error::Domain(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Error {
        Error::Resource(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Error {
        Error::Invariant(msg.into())
    }

    /// Process exit code convention: domain errors 65 (EX_DATAERR),
    /// budget errors 2, internal invariant failures 70 (EX_SOFTWARE).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) => 65,
            Error::Resource(_) => 2,
            Error::Invariant(_) => 70,
        }
    }
}
