use thiserror::Error;

/// Errors produced by the chain solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum XxError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The requested system is larger than the configured cap for the operation.
    #[error("{what} refused: N = {n} exceeds cap {cap}")]
    Size { what: &'static str, n: usize, cap: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl XxError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        XxError::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, XxError>;
