use thiserror::Error;

/// Errors raised by the library. Every fallible operation returns this type.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop at vertex {0} is not allowed in a simple graph")]
    SelfLoop(usize),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("not a permutation: image {image} repeated or out of range at position {position}")]
    InvalidPermutation { position: usize, image: usize },

    #[error("graph is not a tree")]
    NotATree,

    #[error("Prüfer entry {value} at position {position} out of range for n = {n}")]
    PrueferEntry {
        position: usize,
        value: usize,
        n: usize,
    },

    #[error("{what}: n = {n} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("invalid edge probability {0}")]
    InvalidProbability(f64),

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
