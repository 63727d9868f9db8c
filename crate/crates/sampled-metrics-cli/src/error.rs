//! CLI error type with the exit-code contract: 0 success, 1 validation
//! or I/O error, 2 reference-reproduction mismatch.

use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("reference reproduction mismatch:\n{0}")]
    Reproduction(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Reproduction(_) => 2,
            _ => 1,
        }
    }
}

impl From<sampled_metrics::Error> for CliError {
    fn from(e: sampled_metrics::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
