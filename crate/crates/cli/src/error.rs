use std::path::PathBuf;

use thiserror::Error;

use crate::text::FormatError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Format(#[from] FormatError),
    #[error("malformed certificate: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Core(#[from] zipper_core::Error),
    #[error("{0}")]
    Usage(String),
    /// A certificate or translation that does not check out.
    #[error("rejected: {0}")]
    Rejected(String),
}

impl CliError {
    /// Process exit code: a rejection is a "no", everything else a usage or input error.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Rejected(_) => 1,
            _ => 3,
        }
    }
}
