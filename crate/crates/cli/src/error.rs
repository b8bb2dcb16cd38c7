use std::path::PathBuf;

use qsylv_core::QsError;
use thiserror::Error;

/// Exit status for usage, parse and validation errors.
pub const EXIT_USAGE: i32 = 1;
/// Exit status when the generator cannot produce the requested instance.
pub const EXIT_GENERATION: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),

    #[error("{path}: parse error: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] QsError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(QsError::GenerationFailed(_)) => EXIT_GENERATION,
            _ => EXIT_USAGE,
        }
    }
}
