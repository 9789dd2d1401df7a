use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported size: K = {k} exceeds the enumeration limit of {limit}")]
    UnsupportedSize { k: usize, limit: usize },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("cell (policy `{policy}`, T = {horizon}) failed: {source}")]
    Cell {
        policy: String,
        horizon: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by user-supplied configuration rather than
    /// by the run itself.
    pub fn is_config_error(&self) -> bool {
        match self {
            Error::InvalidArgument(_) | Error::UnsupportedSize { .. } | Error::Config(_) => true,
            Error::Cell { source, .. } => source.is_config_error(),
            Error::Io { .. } => false,
        }
    }
}
