use thiserror::Error;

use crate::network::VertexId;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: vertex {id} declared more than once")]
    DuplicateVertex { line: usize, id: String },

    #[error("malformed network: {0}")]
    Malformed(String),

    #[error("vertex {vertex} out of range for a network with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("network is disconnected")]
    Disconnected,

    #[error("grounded system is singular at pivot for vertex {pivot}")]
    Singular { pivot: VertexId },

    #[error("matrix is not symmetric (entry ({row}, {col}))")]
    NotSymmetric { row: usize, col: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("rewrite not applicable: {0}")]
    NotApplicable(String),

    #[error("{vertices} vertices exceed the vertex budget of {budget}")]
    BudgetExceeded { vertices: usize, budget: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
