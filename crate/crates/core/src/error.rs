use thiserror::Error;

/// Exit status for command-line usage and configuration errors.
pub const EXIT_USAGE: i32 = 64;
/// Exit status for malformed or unusable input data.
pub const EXIT_DATA: i32 = 65;
/// Exit status for numerical failures (non-convergence, overflow).
pub const EXIT_NUMERIC: i32 = 70;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("calibration error: {0}")]
    Calibration(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("insufficient events: at least 2 uncensored observations are required, found {0}")]
    InsufficientEvents(usize),

    #[error("degenerate sample: {0}")]
    Degenerate(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("dataset contains no observations")]
    EmptyDataset,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter(_) | Error::Config(_) => EXIT_USAGE,
            Error::Parse { .. }
            | Error::EmptyDataset
            | Error::Domain(_)
            | Error::InsufficientEvents(_)
            | Error::Degenerate(_)
            | Error::Io(_) => EXIT_DATA,
            Error::Numeric(_) | Error::Calibration(_) => EXIT_NUMERIC,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
