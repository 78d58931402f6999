use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole proximity: {0}")]
    PoleProximity(String),
    #[error("magnitude overflow: {0}")]
    MagnitudeOverflow(String),
    #[error("continuation depth exceeded after {0} steps")]
    ContinuationDepthExceeded(usize),
    #[error("quadrature divergence: {0}")]
    Divergence(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unsupported combination: {0}")]
    UnsupportedCombination(String),
    #[error("point not in ordered chamber")]
    NotInOrderedChamber,
    #[error("point does not satisfy the zero-sum constraint")]
    NotConstrained,
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("sampling exhausted for suite {suite} at point {index}")]
    SamplingExhausted { suite: String, index: usize },
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
}

impl Error {
    pub fn is_pole(&self) -> bool {
        matches!(self, Error::PoleProximity(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
