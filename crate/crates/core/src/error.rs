use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("empty circle: plane offset {0} lies outside the unit sphere")]
    EmptyCircle(f64),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// A numerical self-check failed; indicates a bug rather than bad input.
    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),

    /// A proven structural property was violated (e.g. a full-sphere maskable set).
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("corrupt share: {0}")]
    CorruptShare(String),

    #[error("invalid scheme: {0}")]
    InvalidScheme(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
