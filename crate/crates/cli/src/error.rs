use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{command} does not accept {kind} datasets")]
    Kind { command: &'static str, kind: &'static str },
    #[error("{0}")]
    Usage(String),
    #[error("validation failed: {0}")]
    Invalid(#[from] polarfloer_core::Error),
}

impl CliError {
    /// 1 for mathematical validation failures, 2 for everything about the
    /// shape of the input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
