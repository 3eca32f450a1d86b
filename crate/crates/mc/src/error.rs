use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum McError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("{count} Minkowski candidates exceed the limit {limit}")]
    TooManyCandidates { count: usize, limit: usize },
    #[error("hull bookkeeping failed: {0}")]
    Numerical(String),
    #[error(transparent)]
    Core(#[from] orthoscheme_core::CoreError),
    #[error("thread pool: {0}")]
    Pool(String),
}

pub type Result<T> = std::result::Result<T, McError>;
