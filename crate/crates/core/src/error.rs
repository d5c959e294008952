use thiserror::Error;

/// Errors produced by the estimators, the WAV layer and the scenario runner.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singular system: {0}")]
    SingularSystem(String),
    #[error("insufficient lags: need {needed}, have {available}")]
    InsufficientLags { needed: usize, available: usize },
    #[error("data too short: need at least {needed} samples, have {available}")]
    DataTooShort { needed: usize, available: usize },
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
    #[error("malformed file: {0}")]
    MalformedFile(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("unknown scenario: {0}")]
    UnknownScenario(String),
    #[error("config error: {0}")]
    Config(String),
}

impl From<std::io::Error> for SpecError {
    fn from(e: std::io::Error) -> Self {
        SpecError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, SpecError>;

pub(crate) fn invalid(msg: impl Into<String>) -> SpecError {
    SpecError::InvalidParameter(msg.into())
}
