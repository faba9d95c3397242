use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Caller broke a precondition (bad range, mismatched field, non-divisor generator).
    #[error("usage error: {0}")]
    Usage(String),
    /// Mathematically undefined input, e.g. inverting zero.
    #[error("domain error: {0}")]
    Domain(String),
    /// An internal self-check tripped. Always a bug.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
