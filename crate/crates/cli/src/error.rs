use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ordkit::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// Process exit status: 1 for a mathematical negative, 2 for usage
    /// errors, 3 for exhausted resource caps.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_resource() => 3,
            CliError::Core(ordkit::Error::NonArchimedean(_)) => 1,
            _ => 2,
        }
    }
}
