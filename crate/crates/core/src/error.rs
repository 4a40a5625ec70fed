use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A solver or run parameter is outside its supported range.
    #[error("{field}: {reason}")]
    Config { field: &'static str, reason: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    /// Post-processing could not produce a result, e.g. a fit window with
    /// too few records.
    #[error("analysis: {0}")]
    Analysis(String),
}

impl Error {
    pub fn config(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Config { field, reason: reason.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
