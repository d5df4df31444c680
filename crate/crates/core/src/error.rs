use thiserror::Error;

/// Errors raised by the combinatorial routines.
///
/// Variants split into two groups: input errors (bad windows, shapes, weights)
/// and [`Error::Internal`], which signals a broken invariant inside the
/// construction itself.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("period mismatch: {0} vs {1}")]
    PeriodMismatch(usize, usize),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("invalid tabloid: {0}")]
    InvalidTabloid(String),
    #[error("not a partition of {n}: {shape:?}")]
    NotAPartition { shape: Vec<usize>, n: usize },
    #[error("shape mismatch: {0:?} vs {1:?}")]
    ShapeMismatch(Vec<usize>, Vec<usize>),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("weight is not dominant: {0:?}")]
    NotDominant(Vec<i64>),
    #[error("stream error: {0}")]
    Stream(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by malformed or out-of-domain input.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
