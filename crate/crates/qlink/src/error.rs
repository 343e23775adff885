use std::path::PathBuf;

/// Errors produced by parsing, data loading, and numeric routines.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unknown unit '{0}'")]
    UnknownUnit(String),

    #[error("cannot parse quantity '{text}': {reason}")]
    InvalidQuantity { text: String, reason: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },

    #[error("{path}: line {line}: {message}")]
    DataFormat {
        path: String,
        line: usize,
        message: String,
    },

    #[error("{what} = {value:e} outside supported range [{lo:e}, {hi:e}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
