use std::path::PathBuf;

use thiserror::Error;

/// CLI failures, grouped by exit code: 1 for parse/schema problems, 2 for
/// window and precondition violations, 3 for strict-mode oracle
/// disagreement.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: parse error: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{path}: {message}")]
    Schema { path: PathBuf, message: String },
    #[error("{0}")]
    Window(String),
    #[error("{0}")]
    Precondition(String),
    #[error("strict mode: {0}")]
    StrictDisagreement(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. }
            | CliError::Output { .. }
            | CliError::Json { .. }
            | CliError::Schema { .. } => 1,
            CliError::Window(_) | CliError::Precondition(_) => 2,
            CliError::StrictDisagreement(_) => 3,
        }
    }
}
