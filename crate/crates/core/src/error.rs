//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A latent path violated a realizability constraint.
    #[error("realizability violated at t={t} ({reason})")]
    Realizability { t: usize, reason: String },

    /// Series lengths do not line up.
    #[error("length mismatch: {0}")]
    Length(String),

    /// The stage-1 regressor carries no information.
    #[error("degenerate regressor: {0}")]
    DegenerateRegressor(String),

    /// Malformed input data; names the file and row when known.
    #[error("invalid input{}: {msg}", location(.path, .row))]
    Validation {
        path: Option<String>,
        row: Option<usize>,
        msg: String,
    },

    /// The sampler could not construct a realizable starting state.
    #[error("initialization failed: {0}")]
    Init(String),

    /// A run was configured inconsistently.
    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn location(path: &Option<String>, row: &Option<usize>) -> String {
    match (path, row) {
        (Some(p), Some(r)) => format!(" at {p}:{r}"),
        (Some(p), None) => format!(" in {p}"),
        (None, Some(r)) => format!(" at row {r}"),
        (None, None) => String::new(),
    }
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation {
            path: None,
            row: None,
            msg: msg.into(),
        }
    }

    pub fn validation_at(path: impl Into<String>, row: usize, msg: impl Into<String>) -> Self {
        Error::Validation {
            path: Some(path.into()),
            row: Some(row),
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
