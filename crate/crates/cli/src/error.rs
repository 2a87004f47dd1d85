use std::path::PathBuf;

use thiserror::Error;

/// Anything that maps to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}{message}", if path.is_empty() || path == "." { String::new() } else { format!("{path}: ") })]
    Parse { path: String, message: String },
    #[error("{field}: {source}")]
    Invalid {
        field: String,
        #[source]
        source: sdom_core::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn invalid(field: &str, source: sdom_core::Error) -> Self {
        CliError::Invalid {
            field: field.to_string(),
            source,
        }
    }
}
