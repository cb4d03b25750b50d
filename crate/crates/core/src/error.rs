use thiserror::Error;

/// Errors raised anywhere in the engine.
///
/// The variant names are part of the CLI contract: diagnostics print them
/// verbatim, and [`Error::is_size_limit`] picks the exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("GhostVertex: vertex {0} lies in no facet")]
    GhostVertex(usize),
    #[error("EmptyInput: a complex needs at least one vertex and one facet")]
    EmptyInput,
    #[error("VertexOutOfRange: vertex {vertex} is outside [1, {m}]")]
    VertexOutOfRange { vertex: usize, m: usize },
    #[error("EmptyIndexSet: index set must be nonempty")]
    EmptyIndexSet,
    #[error("TooSmall: boundary of a simplex needs at least 2 vertices, got {0}")]
    TooSmall(usize),
    #[error("DecompositionMismatch: join of minimal non-face boundaries differs from the complex")]
    DecompositionMismatch,

    #[error("NotAComplex: composite of consecutive boundary maps is nonzero")]
    NotAComplex,
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    #[error("NegativeDegree: shift by {shift} moves degree {degree} below zero")]
    NegativeDegree { degree: usize, shift: i64 },
    #[error("NotPrime: {0} is not a prime")]
    NotPrime(u64),
    #[error("InvalidGroup: {0}")]
    InvalidGroup(String),

    #[error("InsufficientData: {0}")]
    InsufficientData(String),
    #[error("InconsistentDescriptor: {0}")]
    InconsistentDescriptor(String),
    #[error("ModelRequired: space {0} is abstract; the cellular model needs a finite simplicial model")]
    ModelRequired(usize),
    #[error("SizeLimit: {what} is {actual}, cap is {cap}")]
    SizeLimit {
        what: &'static str,
        actual: u128,
        cap: u128,
    },

    #[error("HypothesisMissing: {0}")]
    HypothesisMissing(String),
    #[error("DisconnectedComponent: fibre component {0} is not connected")]
    DisconnectedComponent(usize),

    #[error("InvalidGraph: {0}")]
    InvalidGraph(String),
    #[error("InfiniteGroup: vertex {0} carries an infinite group; a multiplication table is required")]
    InfiniteGroup(usize),
    #[error("TableRequired: vertex {0} is given only by cardinality; a multiplication table is required")]
    TableRequired(usize),
    #[error("InfiniteCardinality: vertex {0} has infinite cardinality")]
    InfiniteCardinality(usize),
    #[error("LengthMismatch: expected {expected} entries, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("Parse: {0}")]
    Parse(String),
}

impl Error {
    pub fn is_size_limit(&self) -> bool {
        matches!(self, Error::SizeLimit { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
