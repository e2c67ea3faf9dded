use std::fmt;
use std::io;
use std::path::PathBuf;

/// Errors surfaced by the CLI layer; every variant maps to exit code 64.
#[derive(Debug)]
pub enum CliError {
    Io {
        path: Option<PathBuf>,
        source: io::Error,
    },
    Json(serde_json::Error),
    Core(qbs_core::Error),
    Invalid(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io {
                path: Some(p),
                source,
            } => write!(f, "{}: {source}", p.display()),
            CliError::Io { path: None, source } => write!(f, "{source}"),
            CliError::Json(e) => write!(f, "invalid JSON: {e}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Invalid(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e)
    }
}

impl From<qbs_core::Error> for CliError {
    fn from(e: qbs_core::Error) -> Self {
        CliError::Core(e)
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
