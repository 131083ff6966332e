use thiserror::Error;

/// Errors produced by the dlnotch library.
#[derive(Debug, Error)]
pub enum Error {
    /// A direction cosine fell outside [-1, 1].
    #[error("direction cosine {0} is outside [-1, 1]")]
    InvalidDirection(f64),

    /// A scalar parameter violated its precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Two vectors/matrices that must share a dimension do not.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// Matrix expected to be Hermitian deviates beyond tolerance.
    #[error("matrix is not Hermitian (max asymmetry {max_asymmetry:.3e})")]
    NotHermitian { max_asymmetry: f64 },

    /// Cholesky factorization failed; matrix is singular or indefinite.
    #[error("matrix is numerically singular or not positive definite")]
    SingularMatrix,

    /// Look and interferer directions coincide (or are orthogonal) where
    /// tan/cot of the generalized angle is required.
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    /// A Monte Carlo trial failed inside a sweep.
    #[error("trial {trial} at axis value {axis_value} failed: {source}")]
    TrialFailed {
        axis_value: f64,
        trial: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
