use crate::graph::VertexId;

/// Errors produced by graph mutation, index maintenance, and (de)serialization.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("id overflow: vertex id would exceed the {0}-bit hub field")]
    IdOverflow(u32),

    #[error("unknown vertex: {0} is not a live vertex")]
    DeadVertex(VertexId),

    #[error("self-loop: ({0},{0}) is not a legal edge")]
    SelfLoop(VertexId),

    #[error("edge exists: ({0},{1})")]
    EdgeExists(VertexId, VertexId),

    #[error("no such edge: ({0},{1})")]
    NoSuchEdge(VertexId, VertexId),

    #[error("removing the self-label of {0} is forbidden")]
    SelfLabelRemoval(VertexId),

    #[error("pack overflow: {field} ({value} exceeds {max})")]
    PackOverflow {
        field: &'static str,
        value: u64,
        max: u64,
    },

    #[error("path count overflow: shortest-path count exceeds 64 bits")]
    CountOverflow,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("bad magic: not an index file")]
    BadMagic,

    #[error("unsupported index format version {0}")]
    UnsupportedVersion(u8),

    #[error("unexpected end of index file")]
    UnexpectedEnd,

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
