use thiserror::Error;

/// Errors raised while constructing or checking dominance problems.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{points} support points but {probs} probabilities")]
    LengthMismatch { points: usize, probs: usize },
    #[error("negative probability at index {index}")]
    NegativeProbability { index: usize },
    #[error("probabilities sum to {sum}, expected 1")]
    ProbabilitySum { sum: String },
    #[error("support is empty after dropping zero-mass points")]
    EmptySupport,
    #[error("direction vector must be nonzero")]
    ZeroVector,
    #[error("cone needs at least one generator")]
    NoGenerators,
    #[error("generator {index} is the zero vector")]
    ZeroGenerator { index: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("no closed-form oracle: {0}")]
    NoOracle(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
