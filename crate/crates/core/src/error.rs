use thiserror::Error;

/// Errors raised by vector algebra, experiments and their serialization.
#[derive(Debug, Error)]
pub enum VsaError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vectors must have at least one component")]
    EmptyVector,

    #[error("non-finite component at index {index}")]
    NonFinite { index: usize },

    #[error("zero-norm vector has no direction")]
    ZeroNorm,

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("dimension {0} is not a perfect square")]
    NotPerfectSquare(usize),

    #[error("divisor component {index} is too close to zero ({value:e})")]
    NearZeroDivisor { index: usize, value: f64 },

    #[error("{0} must not be empty")]
    Empty(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl VsaError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        VsaError::InvalidParameter(msg.into())
    }

    /// True for errors caused by bad user input rather than runtime failure.
    pub fn is_config_error(&self) -> bool {
        !matches!(self, VsaError::Io(_) | VsaError::NonFinite { .. })
    }
}

pub type Result<T> = std::result::Result<T, VsaError>;

pub(crate) fn ensure_same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(VsaError::DimensionMismatch { expected, found })
    }
}
