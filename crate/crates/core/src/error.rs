use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input or operands that do not belong together.
    #[error("{0}")]
    Usage(String),

    #[error("capacity exceeded: {what} is {size}, limit is {limit}")]
    Capacity {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    /// Fixed-width integer arithmetic left its representation range.
    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A checked mathematical invariant did not hold. Never expected in practice.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn overflow(ctx: impl Into<String>) -> Self {
        Error::Overflow(ctx.into())
    }
}
