use thiserror::Error;

/// Errors produced by the library.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dimension {0} is out of the supported range")]
    DimensionOutOfRange(usize),
    #[error("bilinear form is degenerate")]
    Degenerate,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("group closure exceeded cap of {0} elements")]
    CapExceeded(usize),
    #[error("quadratic form value count matches neither Arf class (polar form violated)")]
    PolarFormViolation,
    #[error("base form must have Arf invariant 1")]
    BaseFormNotArfOne,
    #[error("{0} does not divide {1}")]
    NotDivisor(u32, u32),
    #[error("curve is singular")]
    SingularCurve,
    #[error("point does not lie on the curve")]
    PointNotOnCurve,
    #[error("condition ({condition}) fails at index {index}")]
    ConditionFailed { condition: char, index: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
