use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero discriminant: {0}")]
    Singular(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("pole of the gamma function at {0}")]
    Pole(String),
    #[error("integer overflow while {0}")]
    Overflow(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("class table too small: bound {have}, need at least {need}")]
    TableTooSmall { have: u64, need: u64 },
    #[error("not enough coefficients: have {have}, need {need}")]
    TooFewCoefficients { have: usize, need: usize },
    #[error("{path}:{line}: {msg}")]
    Parse { path: String, line: usize, msg: String },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
