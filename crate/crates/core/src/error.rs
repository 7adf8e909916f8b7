use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exact count overflowed the 128-bit range")]
    Overflow,

    #[error("{what} = {value} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("index {index} out of range (limit {limit})")]
    OutOfRange { index: u64, limit: u64 },

    #[error("ground sets differ: n={left} vs n={right}")]
    GroundSetMismatch { left: usize, right: usize },

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("family must be non-empty")]
    EmptyFamily,

    #[error("vertex subset is not independent")]
    NotIndependent,

    #[error("unknown or unsupported theorem: {0}")]
    UnknownTheorem(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Shorthand for a hypothesis failure naming the violated inequality.
pub(crate) fn hypothesis(msg: impl Into<String>) -> Error {
    Error::Hypothesis(msg.into())
}
