use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex index {index} out of range for {vertex_count} vertices")]
    VertexOutOfRange { index: usize, vertex_count: usize },

    #[error("duplicate edge {from} -> {to}")]
    DuplicateEdge { from: usize, to: usize },

    #[error("self-loop on vertex {0} is not allowed")]
    SelfLoop(usize),

    #[error("edge {from} -> {to} has weight {weight}, incompatible with a {kind} graph")]
    InvalidWeight {
        from: usize,
        to: usize,
        weight: f64,
        kind: &'static str,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("expected a {expected} graph, found {found}")]
    WrongKind {
        expected: &'static str,
        found: &'static str,
    },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is singular to working precision (pivot column {column})")]
    Singular { column: usize },

    #[error("resolvent method inapplicable at gamma = {gamma:e}: 1 - X is singular")]
    MethodInapplicable { gamma: f64 },

    #[error("resolvent is unhealthy (negative entries) at gamma = {gamma:e}")]
    UnhealthyResolvent { gamma: f64 },

    #[error(
        "no valid gamma: precision floor {floor:e} for d_max = {d_max} is not below the critical gain {critical_gain:e}"
    )]
    Infeasible {
        floor: f64,
        critical_gain: f64,
        d_max: u32,
    },

    #[error("path count exceeds exact float range at k = {k}")]
    CountOverflow { k: usize },

    #[error("network did not settle within {iterations} iterations")]
    NotConverged { iterations: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
