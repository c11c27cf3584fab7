use thiserror::Error;

use crate::association::Step;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),

    #[error("weight of vertex `{label}` must be finite and non-negative, got {weight}")]
    InvalidWeight { label: String, weight: f64 },

    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },

    #[error("vertex id {id} out of range for graph with {n} vertices")]
    VertexOutOfRange { id: usize, n: usize },

    #[error("operation needs at least {min} vertices, graph has {n}")]
    TooFewVertices { min: usize, n: usize },

    #[error("graph with {n} vertices exceeds the limit of {max} for this exhaustive routine")]
    TooLarge { n: usize, max: usize },

    #[error("vertex sets passed as a partition overlap or miss vertices")]
    NotAPartition,

    #[error("part {part} is not a module: vertex {splitter} distinguishes {inside:?}")]
    NotAModule {
        part: usize,
        splitter: usize,
        inside: (usize, usize),
    },

    #[error("pattern classification needs 3 to 5 vertices, got {0}")]
    PatternSize(usize),

    #[error("vertices {vertices:?} do not induce a {expected}")]
    NotAWitness { expected: String, vertices: Vec<usize> },

    #[error("precondition of {op} violated: {detail}")]
    Precondition { op: &'static str, detail: String },

    #[error("certification failed at step {step}: {detail}")]
    Certification { step: Step, detail: String },

    #[error("exact solver unavailable: {0}")]
    ExactUnavailable(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid generator parameters: {0}")]
    InvalidSpec(String),

    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
}
