use alloc::string::String;

use thiserror::Error;

/// Errors reported by the planner and the simulation oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex index {index} out of range for a graph with {count} vertices")]
    VertexOutOfRange { index: usize, count: usize },
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge between `{0}` and `{1}`")]
    DuplicateEdge(String, String),
    #[error("odd repeater count unsupported: link {tail}-{head} has w={repeaters}")]
    OddRepeaterCount {
        tail: String,
        head: String,
        repeaters: u32,
    },
    #[error("invalid value for {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("inconsistent degrees: deg={total}, in={incoming}, out={outgoing}")]
    InconsistentDegrees {
        total: u32,
        incoming: u32,
        outgoing: u32,
    },
    #[error("code of length {0} is too large for exhaustive enumeration")]
    CodeTooLarge(usize),
    #[error("invalid code: {0}")]
    InvalidCode(&'static str),
    #[error("unknown code selector `{0}`")]
    UnknownCode(String),
    #[error("abort threshold n_max={n_max} out of range for a code of length {n}")]
    AbortThresholdOutOfRange { n_max: u32, n: u32 },
    #[error("word length {got} does not match code length {expected}")]
    WordLength { expected: usize, got: usize },
    #[error("{qubits} qubits exceed the oracle limit of {limit}")]
    OracleScale { qubits: usize, limit: usize },
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("invalid repeater range {min}..={max}: bounds must be even, positive and ordered")]
    InvalidRepeaterRange { min: u32, max: u32 },
    #[error("no repeater count in {min}..={max} yields a nonzero quality factor")]
    Infeasible { min: u32, max: u32 },
}

pub type Result<T> = core::result::Result<T, Error>;
