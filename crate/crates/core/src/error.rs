use thiserror::Error;

/// Errors raised by the algebraic operations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("input is not a cocycle")]
    NotACocycle,

    #[error("element is not a Maurer-Cartan element")]
    NotMaurerCartan,

    #[error("grading violation: {0}")]
    Grading(String),

    #[error("word length {len} exceeds the bound {max}")]
    WordTooLong { len: usize, max: usize },

    #[error("invalid bivector: {0}")]
    InvalidBivector(String),

    #[error("inconsistent bounds: {0}")]
    InconsistentBounds(String),

    #[error("replay step `{step}` disagrees with the generic system: {detail}")]
    ReplayMismatch { step: String, detail: String },
}

pub type Result<T> = std::result::Result<T, AlgError>;
