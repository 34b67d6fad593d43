use brauer_poly::PolyError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("invalid link pattern: {0}")]
    InvalidPattern(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("matrix is not invertible for the circle product (zero diagonal entry at {0})")]
    NotInvertible(usize),
    #[error("strip window of {rows} rows is too small; need at least {needed}")]
    WindowTooSmall { rows: usize, needed: usize },
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("diagonal of M^2 does not pair uniquely: {0}")]
    AmbiguousPairing(String),
    #[error("pattern {pattern} has a chord between {i} and its successor")]
    ChordPresent { pattern: String, i: usize },
    #[error("pattern {pattern} has no chord between {i} and its successor")]
    NoSmallChord { pattern: String, i: usize },
    #[error("two derivation chains disagree at {pattern}")]
    ChainInconsistency { pattern: String },
    #[error("{check} fails: {witness}")]
    IdentityViolation { check: String, witness: String },
    #[error("stationary vector is not unique")]
    NonUniqueStationary,
    #[error("mismatch at {pattern}: expected {expected}, got {got}")]
    Mismatch { pattern: String, expected: String, got: String },
    #[error("evaluation point hits a pole: {0}")]
    PoleHit(String),
    #[error("matrix is not antisymmetric")]
    NotSkew,
    #[error("table file error: {0}")]
    Persist(String),
    #[error("stored table hash {stored} differs from {computed}")]
    HashMismatch { stored: String, computed: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CoreError>;

pub(crate) fn violation(check: &str, witness: impl Into<String>) -> CoreError {
    CoreError::IdentityViolation { check: check.to_string(), witness: witness.into() }
}
