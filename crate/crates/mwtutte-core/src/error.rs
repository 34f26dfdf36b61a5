use thiserror::Error;

/// Error type shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value violates a precondition (wrong range, wrong
    /// shape, mismatched parts, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The input is structurally fine but outside the mathematical domain of
    /// the operation (e.g. `s` outside `[0,1]`, disconnected graph where a
    /// connected one is required).
    #[error("domain error: {0}")]
    Domain(String),

    /// The input exceeds an enumeration cap that keeps exact computation at
    /// desk scale.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// A string (parameter, descriptor, or file) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// An internal cross-check failed; indicates a bug, not bad input.
    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
