use thiserror::Error;

/// Broad failure class, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The caller asked for something the operation cannot do with these arguments.
    Usage,
    /// Input data could not be parsed or violates a format rule.
    Data,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("width mismatch: expected {expected} bits, found {found}")]
    WidthMismatch { expected: usize, found: usize },

    #[error("reference set of outcomes is empty")]
    EmptyReferenceSet,

    #[error("distribution is empty or has zero total weight")]
    EmptyDistribution,

    #[error("outcome {0} is not in the support of the distribution")]
    NotInSupport(String),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("{vertices} vertices exceeds the brute-force limit of {limit}; supply the minimum cost explicitly (--cmin)")]
    BruteForceLimit { vertices: usize, limit: usize },

    #[error("invalid key {key:?}: {reason}")]
    InvalidKey { key: String, reason: String },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidKey { .. } | Error::Parse(_) => ErrorKind::Data,
            _ => ErrorKind::Usage,
        }
    }

    pub(crate) fn invalid_key(key: &str, reason: impl Into<String>) -> Self {
        Error::InvalidKey {
            key: key.to_string(),
            reason: reason.into(),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
