use thiserror::Error;

/// Errors produced by the double-bridge computations.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside the domain of a map or operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The fixed-point representation of the length ratio cannot certify
    /// the requested quantity.
    #[error("precision exhausted at n = {n}: {reason}")]
    PrecisionExhausted { n: u64, reason: String },

    /// Malformed user input (ratio specs, catalog lines, config files).
    #[error("parse error: {0}")]
    Parse(String),

    /// A standing wave and a geometry that do not belong together.
    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    /// An iterative method failed to reach its tolerance.
    #[error("no convergence: {0}")]
    NoConvergence(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
