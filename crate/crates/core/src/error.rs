use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed text input. Line numbers are 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid quiver: {0}")]
    Quiver(String),

    #[error("endpoint mismatch: {0}")]
    Endpoint(String),

    #[error("weight vectors must all have length {expected}, arrow `{arrow}` has {found}")]
    WeightLength {
        arrow: String,
        expected: usize,
        found: usize,
    },

    #[error("relation {index} is not weight-homogeneous: {relation}")]
    Inhomogeneous { index: usize, relation: String },

    #[error("relation {index} is invalid: {message}")]
    Relation { index: usize, message: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("relation {index} is not a difference of two paths of equal length: {relation}")]
    NotBinomial { index: usize, relation: String },

    #[error("arrow weights are required for this operation")]
    MissingWeights,

    #[error("no presentation available for vertex {0}")]
    MissingPresentation(String),

    #[error("invalid presentation: {0}")]
    Presentation(String),

    #[error("{what} still changing at path length {length}; raise the bound")]
    Unstable { what: String, length: usize },

    #[error("path classes are only built up to length {built}, length {requested} requested")]
    BoundExceeded { built: usize, requested: usize },

    #[error("vertex 0 must carry dimension 1, found {0}")]
    ZeroVertexDimension(usize),

    #[error("module is not 0-generated")]
    NotZeroGenerated,

    #[error("representation is not torus-invariant: {0}")]
    NotTorusInvariant(String),

    #[error("unknown corpus entry `{0}`")]
    UnknownCorpus(String),

    #[error("{0}")]
    Invalid(String),
}
