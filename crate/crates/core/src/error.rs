use thiserror::Error;

/// Everything that can go wrong while building, classifying or parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("expected {expected} edges for a tree on {vertex_count} vertices, found {found}")]
    EdgeCount {
        vertex_count: usize,
        expected: usize,
        found: usize,
    },

    #[error("graph is disconnected: vertex {0} is unreachable from vertex 0")]
    Disconnected(usize),

    #[error("a tree needs at least one vertex")]
    Empty,

    #[error("not a lobster: {0}")]
    NotLobster(String),

    #[error("invalid parameters: {0}")]
    Domain(String),

    #[error("labeling is not a bijection onto 1..={0}")]
    NotBijective(usize),

    #[error("internal consistency: {0}")]
    Internal(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("structure: {0}")]
    Structure(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
