use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degenerate instance: {0}")]
    Degenerate(String),

    #[error("numeric failure: {message} (worst residual {worst_residual:e})")]
    NumericFailure { message: String, worst_residual: f64 },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for single-instance commands.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) | Error::Io(_) | Error::Json(_) => 2,
            Error::Degenerate(_) => 3,
            Error::NumericFailure { .. } | Error::Verification(_) => 4,
        }
    }

    pub(crate) fn numeric(message: impl Into<String>, worst_residual: f64) -> Self {
        Error::NumericFailure {
            message: message.into(),
            worst_residual,
        }
    }
}
