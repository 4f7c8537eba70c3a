use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] sigma_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("schema: {0}")]
    Schema(String),
    #[error("invalid complex: {0}")]
    Invalid(#[from] sigma_core::complex::Violation),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verify(String),
}

pub type CliResult<T> = Result<T, CliError>;

pub fn schema<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Schema(msg.into()))
}
