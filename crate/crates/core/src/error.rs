use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge ({u}, {v}) references a vertex outside 0..{vertex_count}")]
    VertexOutOfRange {
        u: usize,
        v: usize,
        vertex_count: usize,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown vertex id {id} (graph has {vertex_count} vertices)")]
    UnknownVertex { id: usize, vertex_count: usize },

    #[error("all cover vertices are fixed but {uncovered} edges remain uncovered")]
    AllFixed { uncovered: usize },

    #[error("exact search is limited to {limit} vertices, graph has {vertex_count}")]
    TooLarge { limit: usize, vertex_count: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
