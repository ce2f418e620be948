use thiserror::Error;

use crate::decomposition::ValidationReport;

/// Errors raised by graph construction and the solvers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("invalid pattern graph: {0}")]
    InvalidPattern(String),

    #[error("tree decomposition has no bags")]
    EmptyDecomposition,

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(ValidationReport),

    #[error("decomposition covers {decomposition} vertices but the graph has {graph}")]
    DecompositionMismatch { decomposition: usize, graph: usize },

    #[error("width {width} exceeds the cap of {cap}")]
    WidthTooLarge { width: usize, cap: usize },

    #[error("pattern order {order} exceeds the supported maximum of {max}")]
    PatternTooLarge { order: usize, max: usize },

    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("q must be at least 1")]
    ZeroParts,

    #[error("q = {q} exceeds the supported maximum of {max} parts")]
    TooManyParts { q: usize, max: usize },

    #[error("no valid partition exists")]
    NoSolution,

    #[error("certificate unavailable: DP tables were not kept")]
    CertificateUnavailable,

    #[error("engine {engine} does not support {reason}")]
    UnsupportedEngine { engine: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
