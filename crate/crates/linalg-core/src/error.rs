//! Error type shared by the numerical kernels.

use thiserror::Error;

/// Failure modes of the dense kernels.
///
/// Tolerances are part of the contract: callers that catch these errors can
/// rely on the reported residuals being the measured quantities, not guesses.
#[derive(Debug, Clone, Error)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: asymmetry norm {asymmetry:.3e} exceeds {tol:.3e}")]
    NotHermitian { asymmetry: f64, tol: f64 },

    #[error("matrix is not skew-symmetric: residual {residual:.3e} exceeds {tol:.3e}")]
    NotSkewSymmetric { residual: f64, tol: f64 },

    #[error("Pfaffian requires even dimension, got {dim}")]
    OddDimension { dim: usize },

    #[error("gapless at Fermi level: eigenvalue {eigenvalue:.9e} within {tol:.1e} of mu = {mu}")]
    GaplessAtFermiLevel { eigenvalue: f64, mu: f64, tol: f64 },

    #[error("degenerate signature: eigenvalue {eigenvalue:.3e} within {tol:.1e} of zero")]
    DegenerateSignature { eigenvalue: f64, tol: f64 },

    #[error("eigensolver failed to converge after {iterations} QL sweeps")]
    NoConvergence { iterations: usize },

    #[error("matrix is singular: pivot magnitude {pivot:.3e}")]
    SingularMatrix { pivot: f64 },

    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },
}
