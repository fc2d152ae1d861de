use std::ops::Range;
use std::path::PathBuf;

use thiserror::Error;

/// Problems with the configuration file. These map to exit code 1.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {0}: {1}")]
    Read(PathBuf, #[source] std::io::Error),
    #[error("{}{message}", span.as_ref().map(|r| format!("at bytes {}..{}: ", r.start, r.end)).unwrap_or_default())]
    Parse {
        message: String,
        span: Option<Range<usize>>,
    },
    #[error("`{name}`: {reason}")]
    Field { name: String, reason: String },
}

impl ConfigError {
    pub fn field(name: &str, reason: impl Into<String>) -> Self {
        ConfigError::Field {
            name: name.to_string(),
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum LabError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("simulation failed: {0}")]
    Core(#[from] dbac_core::Error),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("output directory {0} holds files from another source")]
    DirtyOutput(PathBuf),
}

impl LabError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        LabError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, LabError>;
