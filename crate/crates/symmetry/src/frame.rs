//! Lagrangian frames: orthonormal column bases of half-rank projections
//! whose complement is carried by an antiunitary symmetry.

use clifford::SymmetryOperator;
use linalg_core::{hermitian_eig, ComplexMatrix};

use crate::error::SymmetryError;
use crate::relation::{check_relation, RelationKind};

/// Absolute tolerance on the frame identities.
pub const FRAME_TOL: f64 = 1e-10;

/// Isometry Phi spanning the range of a projection P with
/// S* conj(P) S = 1 - P. The columns of Phi and of S conj(Phi) together
/// form an orthonormal basis of the whole space.
#[derive(Clone, Debug)]
pub struct LagrangianFrame {
    pub phi: ComplexMatrix,
    pub symmetry: SymmetryOperator,
}

impl LagrangianFrame {
    /// The frame of the complementary subspace, S conj(Phi).
    pub fn complement(&self) -> ComplexMatrix {
        &self.symmetry.matrix * &self.phi.conj()
    }

    /// The projection Phi Phi* this frame spans.
    pub fn projection(&self) -> ComplexMatrix {
        &self.phi * &self.phi.adjoint()
    }

    /// Largest deviation among the defining identities: Phi* Phi = 1,
    /// Phi Phi* + (S conj(Phi)) (S conj(Phi))* = 1 and Phi^t S Phi = 0.
    pub fn residual(&self) -> f64 {
        let m = self.phi.cols();
        let n = self.phi.rows();
        let gram = (&self.phi.adjoint() * &self.phi).dist(&ComplexMatrix::identity(m));
        let complement = self.complement();
        let resolution = (&self.projection() + &(&complement * &complement.adjoint()))
            .dist(&ComplexMatrix::identity(n));
        let isotropy = (&(&self.phi.transpose() * &self.symmetry.matrix) * &self.phi).norm();
        gram.max(resolution).max(isotropy)
    }
}

/// Orthonormal basis of Ran(P) for a half-rank projection P satisfying the
/// flip relation S* conj(P) S = 1 - P.
pub fn lagrangian_frame(
    p: &ComplexMatrix,
    s: &SymmetryOperator,
) -> Result<LagrangianFrame, SymmetryError> {
    let n = p.rows();
    if !p.is_square() || s.matrix.rows() != n {
        return Err(SymmetryError::DimensionMismatch {
            context: format!(
                "projection is {}x{}, symmetry is {}x{}",
                p.rows(),
                p.cols(),
                s.matrix.rows(),
                s.matrix.cols()
            ),
        });
    }
    let proj_residual = p.projection_residual();
    if proj_residual > 1e-9 * p.norm().max(1.0) {
        return Err(SymmetryError::ResidualTooLarge {
            context: "input is not an orthogonal projection",
            residual: proj_residual,
            tol: 1e-9 * p.norm().max(1.0),
        });
    }
    let lagrangian = check_relation(p, s, RelationKind::Lagrangian)?;
    if !lagrangian.holds {
        return Err(SymmetryError::NotLagrangian {
            residual: lagrangian.residual,
        });
    }

    let eig = hermitian_eig(p).map_err(SymmetryError::from)?;
    let range: Vec<usize> = (0..n).filter(|&k| eig.eigenvalues[k] > 0.5).collect();
    if range.len() * 2 != n {
        return Err(SymmetryError::NotHalfRank {
            rank: range.len(),
            dim: n,
        });
    }
    let phi = eig.eigenvectors.select_cols(&range);

    let frame = LagrangianFrame {
        phi,
        symmetry: s.clone(),
    };
    let residual = frame.residual();
    if residual > FRAME_TOL {
        return Err(SymmetryError::ResidualTooLarge {
            context: "frame identities",
            residual,
            tol: FRAME_TOL,
        });
    }
    Ok(frame)
}
