use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("product of {0} and {1} vertices exceeds the vertex id width")]
    ProductTooLarge(usize, usize),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid generator descriptor: {0}")]
    Generator(String),

    #[error("not a cograph: vertices {0:?} induce a P4")]
    NotCograph([usize; 4]),

    #[error("not distance-hereditary: no pendant or twin among {remaining} remaining vertices (first {vertex})")]
    NotDistanceHereditary { vertex: usize, remaining: usize },

    #[error("pruning sequence step {step}: {msg}")]
    BadPruningSequence { step: usize, msg: String },

    #[error("invalid permutation diagram: {0}")]
    BadDiagram(String),

    #[error("invalid tree decomposition: {0}")]
    BadDecomposition(String),

    #[error("decomposition width {width} exceeds ceiling {ceiling}")]
    WidthTooLarge { width: usize, ceiling: usize },

    #[error("set is not independent: {0} ~ {1}")]
    NotIndependent(usize, usize),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
