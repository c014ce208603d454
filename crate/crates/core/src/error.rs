use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {reason}")]
    Parse { path: PathBuf, line: usize, reason: String },

    #[error("empty graph: {0}")]
    EmptyGraph(String),

    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("start and destination coincide (vertex {0})")]
    SamePair(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("alpha = {alpha} too small for this pair: cheap landmark undefined")]
    AlphaTooSmall { alpha: f64 },

    #[error("no feasible alpha for this pair")]
    NoFeasibleAlpha,

    #[error("vertex budget exceeded: instance needs {needed} vertices, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },

    #[error("{0}")]
    Csv(#[from] csv::Error),

    #[error("{0}")]
    Json(#[from] serde_json::Error),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// Errors caused by user input (files, flags, parameters) as opposed to
    /// failures inside the library.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}
