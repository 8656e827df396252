use std::path::PathBuf;

use thiserror::Error;

/// Errors of the IO/CLI layer. Parse and configuration problems map to
/// process exit code 2, everything else to 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cpn_core::Error),

    #[error("parse error in {path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Config(_) => 2,
            // a bad dimension can only come from seed input
            CliError::Core(cpn_core::Error::InvalidDimension(_)) => 2,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}
