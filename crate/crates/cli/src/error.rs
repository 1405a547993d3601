use std::process::ExitCode;

use xxchain::XxError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] XxError),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Serialize(String),
    #[error("{0} validation check(s) failed")]
    ValidationFailed(usize),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// 1 for anything the caller got wrong, 2 for numerical, size and I/O failures.
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) | CliError::Core(XxError::InvalidArgument(_)) => ExitCode::from(1),
            _ => ExitCode::from(2),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
