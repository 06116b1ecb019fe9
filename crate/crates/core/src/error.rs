use thiserror::Error;

/// Errors raised by the economic and dispatch models.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{field}: {reason}")]
    InvalidInput { field: String, reason: String },

    #[error("line {line}: {message}")]
    Csv { line: u64, message: String },

    #[error("missing required column `{0}`")]
    MissingColumn(String),

    #[error("duplicate project name `{0}`")]
    DuplicateName(String),

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidInput {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
