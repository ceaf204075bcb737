//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum CoreError {
    /// Malformed input: bad probability vector, empty record list, broken invariant.
    #[error("validation error: {0}")]
    Validation(String),

    /// A model response that does not match the expected output format.
    #[error("parse error: {message} (raw: {raw:?})")]
    Parse {
        /// What failed to parse.
        message: String,
        /// The raw model output, preserved for debugging.
        raw: String,
    },

    /// Record sets do not cover the scenarios or interpreters an analysis requires.
    #[error("coverage error: {0}")]
    Coverage(String),

    /// A backend call failed after exhausting retries.
    #[error("backend error ({backend_id}): {message}")]
    Backend {
        /// Backend that failed.
        backend_id: String,
        /// Transport or protocol failure description.
        message: String,
    },

    /// A backend call exceeded its configured timeout.
    #[error("backend timeout ({backend_id}) after {timeout_ms} ms")]
    Timeout {
        /// Backend that timed out.
        backend_id: String,
        /// The configured limit.
        timeout_ms: u64,
    },

    /// Strict mode rejected results that lenient mode would exclude with a warning.
    #[error("strict mode: {0}")]
    Strict(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("config error: {0}")]
    Config(String),
}

/// Shorthand result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, CoreError>;

impl CoreError {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        CoreError::Validation(msg.into())
    }

    pub(crate) fn coverage(msg: impl Into<String>) -> Self {
        CoreError::Coverage(msg.into())
    }

    pub(crate) fn parse(message: impl Into<String>, raw: impl Into<String>) -> Self {
        CoreError::Parse {
            message: message.into(),
            raw: raw.into(),
        }
    }
}
