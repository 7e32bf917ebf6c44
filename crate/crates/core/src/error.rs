use thiserror::Error;

/// Errors produced by reconstruction, simulation, and IO routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("io failure: {0}")]
    Io(#[from] std::io::Error),

    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    /// Stable machine-readable category token, used by the CLI for exit
    /// reporting.
    pub fn category(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "dimension",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::Numeric(_) => "numeric",
            Error::Io(_) => "io",
            Error::Format(_) => "format",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
