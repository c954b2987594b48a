use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid simple type: {0}")]
    InvalidType(String),
    #[error("weight {0:?} is not dominant integral")]
    NotDominant(Vec<i64>),
    #[error("weight {weight:?} is not admissible at level {level}")]
    NotAdmissible { weight: Vec<i64>, level: u32 },
    #[error("length mismatch: expected {expected}, got {got}")]
    Length { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("classification failed: {0}")]
    Classification(String),
    #[error("not a root system: {0}")]
    NotRootSystem(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("coefficient at exponent {0}/2 lies beyond the truncation")]
    Truncated(i64),
}

pub type Result<T> = std::result::Result<T, Error>;
