use thiserror::Error;

/// Errors raised by the rate-region engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("variable sets overlap on `{0}`")]
    OverlappingSets(String),
    #[error("empty variable set: {0}")]
    EmptySet(&'static str),
    #[error("invalid distribution: {0}")]
    InvalidPmf(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("missing variable `{0}`")]
    MissingVariable(String),
    #[error("state space of {states} exceeds the cap of {cap} states")]
    StateSpaceTooLarge { states: u128, cap: usize },
    #[error("invalid channel: {0}")]
    InvalidChannel(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("region is unbounded")]
    Unbounded,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    /// Input/schema problems map to exit code 2, numerical/domain problems to 3.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_)
                | Error::InvalidChannel(_)
                | Error::InvalidPmf(_)
                | Error::AlphabetMismatch(_)
                | Error::MissingVariable(_)
                | Error::Io(_)
                | Error::Format(_)
                | Error::InvalidParameter(_)
                | Error::UnknownVariable(_)
                | Error::DuplicateVariable(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
