use thiserror::Error;

use crate::plane_graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("structural error: {0}")]
    Structure(#[from] StructureError),

    #[error("size error: {0}")]
    Size(String),

    #[error("argument error: {0}")]
    Argument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("graph is not a triangulation")]
    NotTriangulation,

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("geometric degeneracy: {0}")]
    Degenerate(String),

    #[error("kernel error: {0}")]
    Kernel(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

/// Violations of the plane graph type invariants, each naming its rule.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("[simple] vertex {0} lists itself as a neighbour")]
    Loop(VertexId),

    #[error("[simple] vertex {vertex} lists neighbour {neighbour} more than once")]
    RepeatedNeighbour {
        vertex: VertexId,
        neighbour: VertexId,
    },

    #[error("[symmetric] vertex {0} lists {1} but {1} does not list {0}")]
    Asymmetric(VertexId, VertexId),

    #[error("[known-vertex] vertex {vertex} lists unknown vertex {neighbour}")]
    UnknownVertex {
        vertex: VertexId,
        neighbour: VertexId,
    },

    #[error("[connected] graph is disconnected: vertex {0} is unreachable from vertex {1}")]
    Disconnected(VertexId, VertexId),

    #[error("[euler] V - E + F = {0}, expected 2: rotation system is not planar")]
    NotPlanar(i64),

    #[error("[outer-face] outer dart {0}->{1} is not an edge")]
    BadOuterDart(VertexId, VertexId),

    #[error("[outer-face] graph with edges needs an outer dart")]
    MissingOuterDart,

    #[error("[non-empty] graph has no vertices")]
    Empty,
}
