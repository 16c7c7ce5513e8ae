//! Certificates for positions whose integer index vanishes identically.
//!
//! Two structural mechanisms force Ind(T) = 0 for T = P F P + 1 - P. Both
//! rest on an operator identity for (Sigma S)* T^t (Sigma S) that holds
//! exactly whenever the operands satisfy their relations, and both come with
//! an explicit antilinear bijection from Ker T onto Ker T*. The check below
//! verifies the identity, counts both kernels, and runs every near-kernel
//! vector through the bijection.

use clifford::SymmetryOperator;
use linalg_core::{polish_null_vectors, singular_spectrum, ComplexMatrix, C64};
use symmetry::{
    check_descriptor, ConjKind, RelationTarget, SymmetryRelation, RELATION_TOL,
};

use crate::error::PairingError;

/// Singular values below this (relative to the largest) count as kernel.
///
/// Sits a decade above the sqrt(eps) floor of gram-based singular values;
/// polishing afterwards restores rounding accuracy for the bijection
/// residuals.
const KERNEL_TOL: f64 = 1e-7;

/// Which mechanism kills the index.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VanishingCase {
    /// P real and F symmetric under their operators: the twisted transpose
    /// of T is T itself, and v -> (Sigma S) conj(v) maps Ker T onto Ker T*.
    RealSymmetric,
    /// P Lagrangian and F real under their operators: the twisted transpose
    /// of T is (1-P) F* (1-P) + P, F carries Ker T onto the kernel of that
    /// operator, and v -> conj(Sigma S F v) lands in Ker T*.
    LagrangianReal,
}

/// Outcome of one vanishing check.
#[derive(Clone, Debug)]
pub struct VanishingReport {
    pub kernel_dim: usize,
    pub cokernel_dim: usize,
    /// Relative residual of the twisted-transpose identity.
    pub identity_residual: f64,
    /// Worst bijection residual over near-kernel vectors (zero when the
    /// kernel is empty).
    pub map_residual: f64,
    pub holds: bool,
}

/// Verify the vanishing mechanism for T = P F P + 1 - P.
///
/// `s` is the operator whose relation P satisfies (real for the first case,
/// Lagrangian for the second); `sigma` the one for F. Either parity is
/// admissible in both cases.
pub fn vanishing_check(
    case: VanishingCase,
    p: &ComplexMatrix,
    f: &ComplexMatrix,
    s: &SymmetryOperator,
    sigma: &SymmetryOperator,
) -> Result<VanishingReport, PairingError> {
    let n = p.rows();
    if !p.is_square() || f.rows() != n || !f.is_square() || s.matrix.rows() != n
        || sigma.matrix.rows() != n
    {
        return Err(PairingError::DimensionMismatch {
            context: "vanishing check operands must share one square dimension".to_string(),
        });
    }
    let residual = p.projection_residual();
    if residual > 1e-8 * (n as f64).sqrt().max(1.0) {
        return Err(PairingError::OperandRelation {
            context: "state-side operand is not a projection".to_string(),
            residual,
        });
    }
    let (p_rel, f_rel) = match case {
        VanishingCase::RealSymmetric => (
            SymmetryRelation {
                conj: ConjKind::Conjugate,
                target: RelationTarget::Same,
                square: s.parity,
            },
            SymmetryRelation {
                conj: ConjKind::Transpose,
                target: RelationTarget::Same,
                square: sigma.parity,
            },
        ),
        VanishingCase::LagrangianReal => (
            SymmetryRelation {
                conj: ConjKind::Conjugate,
                target: RelationTarget::Complement,
                square: s.parity,
            },
            SymmetryRelation {
                conj: ConjKind::Conjugate,
                target: RelationTarget::Same,
                square: sigma.parity,
            },
        ),
    };
    for (a, op, rel, what) in [
        (p, s, &p_rel, "state-side relation"),
        (f, sigma, &f_rel, "observable-side relation"),
    ] {
        let check = check_descriptor(a, &op.matrix, rel)?;
        if !check.holds {
            return Err(PairingError::OperandRelation {
                context: what.to_string(),
                residual: check.residual,
            });
        }
    }
    // The twisted-transpose identity rests on each operator commuting with
    // the opposite operand and on the two operators commuting.
    for (a, b, what) in [
        (&s.matrix, f, "state operator, unitary"),
        (&sigma.matrix, p, "observable operator, projection"),
        (&s.matrix, &sigma.matrix, "the two operators"),
    ] {
        let residual = (&(a * b) - &(b * a)).norm();
        if residual > RELATION_TOL * a.norm().max(1.0) * b.norm().max(1.0) {
            return Err(PairingError::OperandRelation {
                context: format!("commutator [{what}] does not vanish"),
                residual,
            });
        }
    }

    let one = ComplexMatrix::identity(n);
    let t = &(&(p * f) * p) + &(&one - p);
    let sp = &sigma.matrix * &s.matrix;
    let twisted = &(&sp.adjoint() * &t.transpose()) * &sp;
    let target = match case {
        VanishingCase::RealSymmetric => t.clone(),
        VanishingCase::LagrangianReal => {
            let q = &one - p;
            &(&(&q * &f.adjoint()) * &q) + p
        }
    };
    let identity_residual = twisted.dist(&target) / t.norm().max(1.0);

    let spectrum = singular_spectrum(&t)?;
    let scale = spectrum.values.first().copied().unwrap_or(1.0).max(1.0);
    let cut = KERNEL_TOL * scale;
    let kernel_dim = spectrum.count_below(cut);
    let adjoint_spectrum = singular_spectrum(&t.adjoint())?;
    let cokernel_dim = adjoint_spectrum.count_below(cut);

    // Push each near-kernel vector through the bijection and measure how far
    // the image is from the target kernel. Columns are ordered like the
    // descending singular values, so the kernel sits at the tail.
    let raw: Vec<Vec<C64>> = (0..kernel_dim)
        .map(|k| spectrum.right_vectors.col(n - 1 - k))
        .collect();
    let kernel_vectors = polish_null_vectors(&t, &raw)?;
    let mut map_residual: f64 = 0.0;
    let t_adj = t.adjoint();
    for v in &kernel_vectors {
        match case {
            VanishingCase::RealSymmetric => {
                let w = sp.mul_vec(&v.iter().map(|z| z.conj()).collect::<Vec<_>>());
                map_residual = map_residual.max(vec_norm(&t_adj.mul_vec(&w)));
            }
            VanishingCase::LagrangianReal => {
                let fv = f.mul_vec(v);
                // Lemma step: F v lies in the kernel of the twisted target.
                map_residual = map_residual.max(vec_norm(&target.mul_vec(&fv)));
                let w: Vec<_> = sp.mul_vec(&fv).iter().map(|z| z.conj()).collect();
                map_residual = map_residual.max(vec_norm(&t_adj.mul_vec(&w)));
            }
        }
    }

    let holds = identity_residual <= RELATION_TOL
        && kernel_dim == cokernel_dim
        && map_residual <= 1e-8 * scale;
    Ok(VanishingReport {
        kernel_dim,
        cokernel_dim,
        identity_residual,
        map_residual,
        holds,
    })
}

fn vec_norm(v: &[linalg_core::C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
