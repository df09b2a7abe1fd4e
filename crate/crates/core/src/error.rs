use thiserror::Error;

/// Errors surfaced by the library. The CLI maps `Capability` to exit code 2
/// and everything else to exit code 1.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: bad JSON, unknown vertices, non-proper peripherals.
    #[error("input error: {0}")]
    Input(String),
    /// A documented precondition of an operation does not hold.
    #[error("contract violation: {0}")]
    Contract(String),
    /// The computation exceeds a documented limit.
    #[error("capability limit: {0}")]
    Capability(String),
    /// An internal consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
