use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("t-degree {degree} exceeds the series degree cap {cap}")]
    DegreeOverflow { degree: usize, cap: usize },
    #[error("n = {n} exceeds the table limit {limit}")]
    TableLimit { n: usize, limit: usize },
    #[error("brute-force enumeration is limited to n <= {limit}, got {n}")]
    CostGuard { n: usize, limit: usize },
    #[error("unknown generating-function catalog id `{0}`")]
    UnknownCatalog(String),
    #[error("cannot parse rational `{0}`")]
    ParseRational(String),
    #[error("cannot parse cone spec `{0}`")]
    ParseSpec(String),
    #[error("the Grassmann-angle relation does not hold for a linear subspace")]
    Subspace,
}

pub type Result<T> = std::result::Result<T, CoreError>;
