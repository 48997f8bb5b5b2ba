use thiserror::Error;

/// Errors raised by constructions and analyses.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incompatible group elements: {0}")]
    Mismatch(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("invalid generating set: {0}")]
    InvalidGeneratingSet(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{what} exceeds guard of {limit}")]
    GuardExceeded { what: &'static str, limit: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }
}
