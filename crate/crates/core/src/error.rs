use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("inequality system is infeasible")]
    Empty,

    #[error("inequality system is unbounded")]
    Unbounded,

    #[error("polytope is not full-dimensional")]
    NotFullDimensional,

    #[error("inequality labelled {0} is redundant")]
    RedundantInequality(usize),

    #[error("duplicate label {0}")]
    DuplicateLabel(String),

    #[error("origin is not an interior point (b for facet {label} is {value})")]
    OriginNotInterior { label: usize, value: String },

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("unknown label {0}")]
    UnknownLabel(String),

    #[error("label {0} is not in the vertex set")]
    LabelOutsideVertexSet(String),

    #[error("vector configuration is not a Gale transform")]
    NotGale,

    #[error("{failing} of {total} vertices are not strictly preserved")]
    NotAllVerticesSurvive { failing: usize, total: usize },

    #[error("image vectors fail to be a Gale transform although every vertex survives")]
    SpanningDefect,

    #[error("graph component with {vertices} vertices exceeds the exact colouring cap of {cap}; use greedy mode")]
    TooLargeForExact { vertices: usize, cap: usize },

    #[error("({n}, {k}) is outside the range 0 < 2k - 1 <= n")]
    OutOfTheoremRange { n: usize, k: usize },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("epsilon {0} is outside (0, 1]")]
    EpsilonOutOfRange(String),

    #[error("expected dimension {expected}, found {found}")]
    WrongDimension { expected: usize, found: usize },

    #[error("no admissible perturbation after {0} attempts")]
    RetriesExhausted(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
