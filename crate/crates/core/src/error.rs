use thiserror::Error;

/// Errors from constructing or decoding graphs.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("adjacency is not symmetric between {u} and {v}")]
    Asymmetric { u: usize, v: usize },
    #[error("graph would have {requested} vertices; at most 64 are supported")]
    Capacity { requested: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown graph name `{0}`")]
    UnknownName(String),
    #[error("malformed graph6: {0}")]
    Format(String),
}

/// Errors raised by the analysis, generation and certification layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("graph contains a forbidden induced subgraph")]
    NotFamilyFree,
    #[error("vertex {witness} is mixed on the given set")]
    NotHomogeneous { witness: usize },
    #[error("vertex {vertex} has neighborhood {neighborhood:?} on the hole, which matches no class")]
    ClassViolation { vertex: usize, neighborhood: Vec<usize> },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("uncertified database: {0}")]
    UncertifiedDatabase(String),
    #[error("malformed manifest: {0}")]
    Manifest(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
