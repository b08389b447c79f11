use thiserror::Error;

pub type Result<T> = std::result::Result<T, FcsError>;

/// Error classes surfaced by the diagnostic pipeline.
///
/// Each class maps to a stable CLI exit code; see `FcsError::exit_code`.
#[derive(Debug, Error)]
pub enum FcsError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("normalization residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    Normalization { residual: f64, tol: f64 },
    #[error("resource cap exceeded: {0}")]
    Cap(String),
    #[error("no stationary state found: {0}")]
    NoStationaryState(String),
    #[error("state is not faithful: {0}")]
    NotFaithful(String),
    #[error("system is not ergodic (fixed space dimension {fixed_dim})")]
    NotErgodic { fixed_dim: usize },
    #[error("representation is not irreducible (commutant dimension {0})")]
    NotIrreducible(usize),
    #[error("no covariant solution: {0}")]
    NotCovariant(String),
    #[error("no unitary intertwiner: {0}")]
    NoIntertwiner(String),
    #[error("quadrature did not converge: indicator deviation {deviation:.3e}")]
    QuadratureNotConverged { deviation: f64 },
    #[error("unknown model: {0}")]
    UnknownModel(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("incomplete bundle: missing {0}")]
    IncompleteBundle(String),
    #[error("eigensolver failed to converge: {0}")]
    Convergence(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl FcsError {
    /// Stable exit code per error class (0 is reserved for success).
    pub fn exit_code(&self) -> i32 {
        match self {
            FcsError::Parse(_) => 2,
            FcsError::Shape(_) => 3,
            FcsError::Normalization { .. } => 4,
            FcsError::Cap(_) => 5,
            FcsError::NoStationaryState(_) => 6,
            FcsError::NotFaithful(_) => 7,
            FcsError::NotErgodic { .. } => 8,
            FcsError::NotIrreducible(_) => 9,
            FcsError::NotCovariant(_) => 10,
            FcsError::NoIntertwiner(_) => 11,
            FcsError::QuadratureNotConverged { .. } => 12,
            FcsError::UnknownModel(_) => 13,
            FcsError::DimensionMismatch(_) => 14,
            FcsError::IncompleteBundle(_) => 15,
            FcsError::Convergence(_) => 16,
            FcsError::Precondition(_) => 17,
            FcsError::Io(_) => 18,
        }
    }
}
