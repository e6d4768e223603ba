use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("shape mismatch: {0}")]
    ShapeError(String),

    #[error("graph is disconnected ({0})")]
    DisconnectedGraph(String),

    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("eigengap must lie in (0, 1], got {0}")]
    InvalidEigengap(f64),

    #[error("agent index {index} out of range for {m} agents")]
    IndexError { index: usize, m: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension too small: {0}")]
    DimensionTooSmall(String),

    #[error("reference solve failed: {0}")]
    ReferenceSolveFailed(String),

    #[error("parse error at line {line}: {message}")]
    ParseError { line: usize, message: String },

    #[error("label error at line {line}: {message}")]
    LabelError { line: usize, message: String },

    #[error("step sizes infeasible: {0}")]
    StepSizeInfeasible(String),

    #[error("iteration schedule exhausted at k = {k} (horizon T = {horizon})")]
    ScheduleExhausted { k: usize, horizon: usize },

    #[error("config error at `{path}`: {message}")]
    ConfigError { path: String, message: String },

    #[error("budget {budget} is below the first record of trace {trace} (sim time {first})")]
    BudgetTooSmall { budget: f64, trace: usize, first: f64 },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::ConfigError {
            path: path.into(),
            message: message.into(),
        }
    }

    /// True for errors caused by the user's configuration rather than by a failed run.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            Error::ConfigError { .. }
                | Error::StepSizeInfeasible(_)
                | Error::InvalidParameter(_)
                | Error::InvalidSize(_)
                | Error::InvalidEigengap(_)
                | Error::DimensionTooSmall(_)
                | Error::DisconnectedGraph(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
