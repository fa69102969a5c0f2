use thiserror::Error;

/// Errors surfaced by the library. `Precondition` maps to CLI exit code 1,
/// `Parse` to exit code 2.
#[derive(Debug, Error)]
pub enum TropError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, TropError>;

pub fn precondition(msg: impl Into<String>) -> TropError {
    TropError::Precondition(msg.into())
}

pub fn parse_err(msg: impl Into<String>) -> TropError {
    TropError::Parse(msg.into())
}
