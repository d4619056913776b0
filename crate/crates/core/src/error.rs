use thiserror::Error;

use crate::numeric::NumericError;

/// Errors raised while building or fitting over a node set.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("no data points")]
    Empty,
    #[error("duplicate x value at points {first} and {second}")]
    DuplicateNode { first: usize, second: usize },
    #[error("node index {index} out of range for {len} nodes")]
    NodeIndexOutOfRange { index: usize, len: usize },
    #[error("expected {expected} coefficients, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("exponential form requires positive ordinates (point {index} has y <= 0)")]
    NonPositiveOrdinate { index: usize },
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

impl FitError {
    /// Domain errors are violations of a model's admissible inputs; everything else is
    /// a problem with the data itself.
    pub fn is_domain(&self) -> bool {
        matches!(self, FitError::NonPositiveOrdinate { .. })
    }
}
