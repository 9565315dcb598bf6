use thiserror::Error;

use crate::word::Word;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    Asymmetric,
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid automaton: {0}")]
    InvalidNfa(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("graph is path-complete")]
    PathComplete,
    #[error("cycle detected in auxiliary graph through {} nodes", .0.len())]
    Cycle(Vec<usize>),
    #[error("certificate has no entry for node {0}")]
    MissingNode(String),
    #[error("invalid scalar {0:?}")]
    Scalar(String),
    #[error("construction invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }

    pub(crate) fn word(w: &Word, msg: &str) -> Self {
        Error::InvalidWord(format!("{w}: {msg}"))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
