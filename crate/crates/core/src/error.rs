use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("weight is not K-dominant: {0}")]
    NotDominant(String),

    #[error("highest weight is inconsistent with its lambda_a-datum: {0}")]
    InconsistentMu(String),

    #[error("size guard exceeded: {what} = {value} > {limit}")]
    Guard { what: &'static str, value: usize, limit: usize },

    #[error("block {0} is not lambda-large")]
    NotLambdaLarge(usize),
}

impl Error {
    /// Stable short tag used in CLI and FFI error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::Guard { .. } => "guard",
            _ => "validation",
        }
    }
}
