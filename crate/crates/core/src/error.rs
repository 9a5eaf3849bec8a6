use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("universe mismatch: rank {left} vs rank {right}")]
    UniverseMismatch { left: usize, right: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate parameters: {0}")]
    DegenerateParams(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("insufficient truncation: {0}")]
    Truncation(String),
}

impl Error {
    /// Process exit code contract: 2 for bad input, 3 for internal
    /// consistency failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Internal(_) => 3,
            _ => 2,
        }
    }
}
