use std::path::PathBuf;

use thiserror::Error;

/// Failures of a CLI run, split by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Table {
        path: PathBuf,
        #[source]
        source: qrefl_core::Error,
    },
    #[error("numerical failure: {0}")]
    Numerical(qrefl_core::Error),
    #[error("check failed: {0}")]
    Check(String),
}

impl CliError {
    /// 0 success, 1 numerical failure, 2 configuration or IO error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerical(_) | CliError::Check(_) => 1,
            CliError::Config(_) | CliError::Io { .. } | CliError::Table { .. } => 2,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

impl From<qrefl_core::Error> for CliError {
    fn from(e: qrefl_core::Error) -> Self {
        use qrefl_core::Error as E;
        match e {
            E::Config(_) | E::Domain { .. } | E::Ingest { .. } => CliError::Config(e.to_string()),
            other => CliError::Numerical(other),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
