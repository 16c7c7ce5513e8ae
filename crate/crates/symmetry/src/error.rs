//! Error type for classification and reduction failures.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum SymmetryError {
    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    /// Two supplied candidates claim the same physical role, or one candidate
    /// passes mutually exclusive relations.
    #[error("inconsistent symmetry set: {conflict}")]
    InconsistentSymmetries { conflict: String },

    /// Two passing operators neither commute nor anticommute, so no Cayley
    /// rotation can bring them to the commuting convention.
    #[error(
        "candidates {first} and {second} neither commute (residual {commute:.3e}) \
         nor anticommute (residual {anticommute:.3e})"
    )]
    IncompatibleOperatorPair {
        first: usize,
        second: usize,
        commute: f64,
        anticommute: f64,
    },

    /// The projection is not exchanged with its complement by the symmetry.
    #[error("projection is not Lagrangian for the given symmetry (residual {residual:.3e})")]
    NotLagrangian { residual: f64 },

    /// A Lagrangian projection must have half-dimensional range.
    #[error("projection rank {rank} is not half of the dimension {dim}")]
    NotHalfRank { rank: usize, dim: usize },

    /// Chiral reduction needs the two eigenspaces of the grading to match.
    #[error("chiral eigenspaces have unequal dimensions {plus} and {minus}")]
    UnequalChiralEigenspaces { plus: usize, minus: usize },

    /// An operator failed a relation it was declared to satisfy.
    #[error("{context}: residual {residual:.3e} exceeds tolerance {tol:.1e}")]
    ResidualTooLarge {
        context: &'static str,
        residual: f64,
        tol: f64,
    },

    #[error("matrix must be self-adjoint: asymmetry {residual:.3e}")]
    NotSelfAdjoint { residual: f64 },

    #[error(transparent)]
    Linalg(#[from] linalg_core::LinalgError),

    #[error(transparent)]
    Clifford(#[from] clifford::CliffordError),
}
