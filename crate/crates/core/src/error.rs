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

    #[error("line {line}: expected two node identifiers, found {found:?}")]
    Parse { line: usize, found: String },

    #[error("edge list contains no nodes")]
    EmptyGraph,

    #[error("node index {index} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { index: usize, node_count: usize },

    #[error("density is undefined for graphs with fewer than two nodes (n = {0})")]
    DensityUndefined(usize),

    #[error("invalid sampler parameter: {0}")]
    InvalidSpec(String),

    #[error("sample target of {target} nodes exceeds graph size {node_count}")]
    TargetTooLarge { target: usize, node_count: usize },

    #[error("cannot compare a {left} distribution with a {right} distribution")]
    KindMismatch { left: &'static str, right: &'static str },

    #[error("empty distribution")]
    EmptyDistribution,

    #[error("property matrix: {0}")]
    InvalidMatrix(String),

    #[error("config: {0}")]
    Config(String),

    #[error("dataset {name}: expected {what} = {expected}, loaded graph has {actual}")]
    ExpectationMismatch {
        name: String,
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
