use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    /// A formula was queried outside its stated validity range.
    #[error("outside validity range: {0}")]
    OutOfRange(String),

    /// A computation would exceed a built-in resource guard.
    #[error("resource guard: {0}")]
    ResourceGuard(String),

    /// An internal invariant that should be unreachable was violated; this is a bug.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
