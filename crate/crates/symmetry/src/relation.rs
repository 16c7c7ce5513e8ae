//! Residual checks for the antiunitary relations tying an operator to a real
//! symmetry operator.

use clifford::SymmetryOperator;
use linalg_core::ComplexMatrix;

use crate::error::SymmetryError;
use crate::tables::{ConjKind, RelationTarget, SymmetryRelation};

/// Relative tolerance deciding whether a relation holds.
pub const RELATION_TOL: f64 = 1e-9;

/// The four relation checks exposed to callers.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RelationKind {
    /// S* conj(A) S = A.
    Real,
    /// S* conj(A) S = -A.
    ChiralOdd,
    /// S* transpose(A) S = A.
    Transpose,
    /// S* conj(P) S = 1 - P.
    Lagrangian,
}

/// Outcome of a relation check.
#[derive(Clone, Copy, Debug)]
pub struct RelationCheck {
    pub holds: bool,
    pub residual: f64,
    pub tol: f64,
}

impl RelationCheck {
    fn from_residual(residual: f64, tol: f64) -> Self {
        RelationCheck {
            holds: residual <= tol,
            residual,
            tol,
        }
    }
}

/// S* conj(A) S or S* transpose(A) S.
pub fn conjugated(a: &ComplexMatrix, s: &ComplexMatrix, conj: ConjKind) -> ComplexMatrix {
    let inner = match conj {
        ConjKind::Conjugate => a.conj(),
        ConjKind::Transpose => a.transpose(),
    };
    &(&s.adjoint() * &inner) * s
}

fn require_compatible(a: &ComplexMatrix, s: &ComplexMatrix) -> Result<(), SymmetryError> {
    if !a.is_square() || a.rows() != s.rows() || !s.is_square() {
        return Err(SymmetryError::DimensionMismatch {
            context: format!(
                "operator is {}x{} but symmetry is {}x{}",
                a.rows(),
                a.cols(),
                s.rows(),
                s.cols()
            ),
        });
    }
    Ok(())
}

/// Evaluate one of the four named relations of `kind` for A against S.
/// Holds iff the residual is at most `RELATION_TOL * norm(A)`.
pub fn check_relation(
    a: &ComplexMatrix,
    s: &SymmetryOperator,
    kind: RelationKind,
) -> Result<RelationCheck, SymmetryError> {
    let descriptor = match kind {
        RelationKind::Real => SymmetryRelation {
            conj: ConjKind::Conjugate,
            target: RelationTarget::Same,
            square: s.parity,
        },
        RelationKind::ChiralOdd => SymmetryRelation {
            conj: ConjKind::Conjugate,
            target: RelationTarget::Negative,
            square: s.parity,
        },
        RelationKind::Transpose => SymmetryRelation {
            conj: ConjKind::Transpose,
            target: RelationTarget::Same,
            square: s.parity,
        },
        RelationKind::Lagrangian => SymmetryRelation {
            conj: ConjKind::Conjugate,
            target: RelationTarget::Complement,
            square: s.parity,
        },
    };
    check_descriptor(a, &s.matrix, &descriptor)
}

/// Evaluate a table-driven relation descriptor (the square of S is not
/// re-checked here; `SymmetryOperator` construction already pinned it).
pub fn check_descriptor(
    a: &ComplexMatrix,
    s: &ComplexMatrix,
    descriptor: &SymmetryRelation,
) -> Result<RelationCheck, SymmetryError> {
    require_compatible(a, s)?;
    let lhs = conjugated(a, s, descriptor.conj);
    let rhs = match descriptor.target {
        RelationTarget::Same => a.clone(),
        RelationTarget::Negative => a.scale_re(-1.0),
        RelationTarget::Complement => {
            let one = ComplexMatrix::identity(a.rows());
            &one - a
        }
    };
    let residual = lhs.dist(&rhs);
    Ok(RelationCheck::from_residual(
        residual,
        RELATION_TOL * a.norm(),
    ))
}
