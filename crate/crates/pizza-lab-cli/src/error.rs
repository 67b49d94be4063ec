use std::path::PathBuf;

use thiserror::Error;

/// Exit codes: 0 ok, 1 invalid input or inequivalent bundles, 2 unreadable
/// or unparseable input, 3 admissibility failure, 4 verification failure.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {msg}", path.display())]
    Parse { path: PathBuf, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error("invalid: {0}")]
    Invalid(String),
    #[error("inequivalent: {0}")]
    Inequivalent(String),
    #[error("not admissible: {0}")]
    Admissibility(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) | CliError::Inequivalent(_) => 1,
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Usage(_) => 2,
            CliError::Admissibility(_) => 3,
            CliError::Verification(_) => 4,
        }
    }
}
