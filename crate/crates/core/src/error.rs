use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller violated a precondition (bad rank, bad index, invalid input).
    #[error("usage error: {0}")]
    Usage(String),
    /// An operation left its mathematical domain (e.g. raising a factor past depth 1).
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed monomial text; `position` is a byte offset into the input.
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    /// A configured resource cap was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// Internal consistency check failed while building a structure.
    #[error("construction error: {0}")]
    Construction(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}
