use thiserror::Error;

/// CLI failures, split by the exit code they map to.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or flag combinations (exit 2).
    #[error("usage: {0}")]
    Usage(String),

    /// Input/output configuration that cannot be satisfied, such as a
    /// missing column (exit 2).
    #[error("config: {0}")]
    Config(String),

    /// The data itself is unusable (exit 1).
    #[error("data: {0}")]
    Data(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Data(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<minimax_core::Error> for CliError {
    fn from(e: minimax_core::Error) -> Self {
        match e {
            minimax_core::Error::Usage(msg) => CliError::Usage(msg),
            other => CliError::Data(other.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
