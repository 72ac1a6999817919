use thiserror::Error;

/// Exit code for a failed verification.
pub const EXIT_VERIFY: i32 = 1;
/// Exit code for bad flags or argument values.
pub const EXIT_USAGE: i32 = 2;
/// Exit code for numeric, resource and data failures.
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] rzl_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    /// Reports were printed; at least one check failed.
    #[error("verification failed")]
    VerifyFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerifyFailed => EXIT_VERIFY,
            CliError::Usage(_) | CliError::Core(rzl_core::Error::Domain(_)) => EXIT_USAGE,
            _ => EXIT_NUMERIC,
        }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;
