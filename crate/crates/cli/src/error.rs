use std::path::PathBuf;

use mapcount_core::Error as CoreError;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("{0}")]
    Usage(String),

    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed coefficient file: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    /// Process exit status: 1 when results disagree or data fails an
    /// exactness check, 2 for anything the caller asked for wrongly.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Core(CoreError::NonIntegerCount { .. } | CoreError::InconsistentVector { .. }) => 1,
            _ => 2,
        }
    }
}
