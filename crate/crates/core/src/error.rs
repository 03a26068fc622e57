use thiserror::Error;

/// Errors raised by tensor construction, algebra, solvers and certifiers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TensorError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("non-finite entry at flat index {index}")]
    NonFinite { index: usize },

    #[error("invalid dimensions {n1}x{n2}x{n3}: every dimension must be positive")]
    InvalidDims { n1: usize, n2: usize, n3: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error(
        "Fourier slices {slice} and {mirror} violate conjugate symmetry (residual {residual:e}); no real preimage"
    )]
    SymmetryViolation {
        slice: usize,
        mirror: usize,
        residual: f64,
    },

    #[error("tensor is singular: Fourier slice {slice} has condition estimate {condition:e}")]
    Singular { slice: usize, condition: f64 },

    #[error("tensor is not symmetric (residual {residual:e}, tolerance {tolerance:e})")]
    NotSymmetric { residual: f64, tolerance: f64 },

    #[error("tensor is not t-positive semidefinite: slice {slice} has eigenvalue {eigenvalue:e} below {threshold:e}")]
    NotPositiveSemidefinite {
        slice: usize,
        eigenvalue: f64,
        threshold: f64,
    },

    #[error("{solver} did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        solver: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
}

impl TensorError {
    /// True for failures of the numerics or of a theorem's hypotheses, as
    /// opposed to malformed input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            TensorError::Singular { .. }
                | TensorError::NotSymmetric { .. }
                | TensorError::NotPositiveSemidefinite { .. }
                | TensorError::NoConvergence { .. }
                | TensorError::Hypothesis(_)
                | TensorError::SymmetryViolation { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, TensorError>;
