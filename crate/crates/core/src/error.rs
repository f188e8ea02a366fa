//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vector length must be at least 1")]
    EmptyVector,

    #[error("unknown benchmark function `{0}`")]
    UnknownFunction(String),

    #[error("unknown strategy variant `{0}`")]
    UnknownVariant(String),

    #[error("`{id}` requires dimension >= {min}, got {got}")]
    DimensionTooSmall {
        id: &'static str,
        min: usize,
        got: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("class index {index} out of range for {classes} classes")]
    ClassOutOfRange { index: usize, classes: usize },

    #[error("invalid hyperparameter override `{key}`: {reason}")]
    InvalidOverride { key: String, reason: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed log file {path}: {reason}")]
    MalformedLog { path: String, reason: String },
}

impl Error {
    pub(crate) fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }
}
