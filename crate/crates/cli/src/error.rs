use std::io;

use serde_json::json;
use thiserror::Error;

/// Failures of a CLI run, each mapped to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("numerical failure: {0}")]
    Numerical(#[from] poincare_shell::Error),
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation(_) | CliError::Numerical(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Validation(_) => "validation",
            CliError::Numerical(_) => "numerical",
            CliError::Io(_) => "io",
        }
    }

    /// Machine-readable error object written to stderr.
    pub fn to_json(&self) -> String {
        json!({
            "error": {
                "kind": self.kind(),
                "code": self.exit_code(),
                "message": self.to_string(),
            }
        })
        .to_string()
    }

    /// Input errors from the core library are usage errors; the rest are numerical.
    pub fn from_core(e: poincare_shell::Error) -> Self {
        use poincare_shell::Error as E;
        match e {
            E::InvalidGeometry(_) | E::InvalidArgument(_) | E::Domain { .. } => CliError::Usage(e.to_string()),
            other => CliError::Numerical(other),
        }
    }
}
