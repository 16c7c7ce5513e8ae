//! Cross-checks between the dual assemblies of one pairing.
//!
//! Swapping the roles of the two operands produces a second Fredholm
//! operator with the same index data. For two projections the kernels of
//! P (1 - 2E) P + 1 - P and E (1 - 2P) E + 1 - E match dimension for
//! dimension, with E itself carrying one kernel onto the other. For two
//! unitaries both block assemblies share their kernel with the
//! anticommutator U F + F U. These exact finite-dimensional statements are
//! what make the table's mixed entries consistent.

use linalg_core::{polish_null_vectors, singular_spectrum, ComplexMatrix, C64};

use crate::error::PairingError;

/// Singular values below this (relative to the largest) count as kernel.
///
/// Gram-based singular values resolve an exact zero only to about
/// sqrt(eps) ~ 1e-8 of the scale, so the threshold sits a decade above that
/// floor. Kernel vectors are polished afterwards, which restores rounding
/// accuracy for the map residuals.
const KERNEL_TOL: f64 = 1e-7;

/// The two operands whose dual assemblies are compared.
#[derive(Clone, Debug)]
pub enum EquivalencePair {
    Projections { p: ComplexMatrix, e: ComplexMatrix },
    Unitaries { u: ComplexMatrix, f: ComplexMatrix },
}

/// Outcome of one equivalence check.
#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    /// Kernel dimensions of the two dual assemblies.
    pub kernel_dims: (usize, usize),
    /// Kernel dimension of the anticommutator U F + F U (unitary case).
    pub reference_dim: Option<usize>,
    /// Worst residual of the explicit kernel maps.
    pub map_residual: f64,
    pub holds: bool,
}

fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn kernel_of(t: &ComplexMatrix) -> Result<(usize, Vec<Vec<C64>>, f64), PairingError> {
    let spectrum = singular_spectrum(t)?;
    let scale = spectrum.values.first().copied().unwrap_or(1.0).max(1.0);
    let count = spectrum.count_below(KERNEL_TOL * scale);
    let n = t.rows();
    let raw: Vec<Vec<C64>> = (0..count)
        .map(|k| spectrum.right_vectors.col(n - 1 - k))
        .collect();
    let vectors = polish_null_vectors(t, &raw)?;
    Ok((count, vectors, scale))
}

fn require_projection(m: &ComplexMatrix, what: &str) -> Result<(), PairingError> {
    let residual = m.projection_residual();
    if residual > 1e-8 * (m.rows() as f64).sqrt().max(1.0) {
        return Err(PairingError::OperandRelation {
            context: format!("{what} is not a projection"),
            residual,
        });
    }
    Ok(())
}

fn require_unitary(m: &ComplexMatrix, what: &str) -> Result<(), PairingError> {
    let residual = m.unitary_residual();
    if residual > 1e-8 * (m.rows() as f64).sqrt().max(1.0) {
        return Err(PairingError::OperandRelation {
            context: format!("{what} is not unitary"),
            residual,
        });
    }
    Ok(())
}

/// Compare the dual assemblies of one operand pair.
///
/// Equality of the kernel dimensions is exact, not a tolerance statement:
/// the maps v -> E v (with norm 1/sqrt(2) on kernel vectors) and
/// v -> (U v, v)/sqrt(2) are isomorphisms onto the partner kernels.
pub fn equivalence_check(pair: &EquivalencePair) -> Result<EquivalenceReport, PairingError> {
    match pair {
        EquivalencePair::Projections { p, e } => {
            let n = p.rows();
            if !p.is_square() || e.rows() != n || !e.is_square() {
                return Err(PairingError::DimensionMismatch {
                    context: "projection pair must share one square dimension".to_string(),
                });
            }
            require_projection(p, "first operand")?;
            require_projection(e, "second operand")?;
            let one = ComplexMatrix::identity(n);
            let flat_e = &one - &e.scale_re(2.0);
            let flat_p = &one - &p.scale_re(2.0);
            let t = &(&(p * &flat_e) * p) + &(&one - p);
            let t_dual = &(&(e * &flat_p) * e) + &(&one - e);
            let (dim, vectors, scale) = kernel_of(&t)?;
            let (dim_dual, _, _) = kernel_of(&t_dual)?;

            // Forward map E and exact back-map: P E v = v / 2 on Ker T.
            let mut map_residual: f64 = 0.0;
            for v in &vectors {
                let ev = e.mul_vec(v);
                map_residual = map_residual.max(vec_norm(&t_dual.mul_vec(&ev)));
                let norm_defect = (vec_norm(&ev) - 0.5_f64.sqrt()).abs();
                map_residual = map_residual.max(norm_defect);
                let back = p.mul_vec(&ev);
                let defect: f64 = back
                    .iter()
                    .zip(v)
                    .map(|(b, vi)| (b - 0.5 * vi).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                map_residual = map_residual.max(defect);
            }
            let holds = dim == dim_dual && map_residual <= 1e-8 * scale;
            Ok(EquivalenceReport {
                kernel_dims: (dim, dim_dual),
                reference_dim: None,
                map_residual,
                holds,
            })
        }
        EquivalencePair::Unitaries { u, f } => {
            let n = u.rows();
            if !u.is_square() || f.rows() != n || !f.is_square() {
                return Err(PairingError::DimensionMismatch {
                    context: "unitary pair must share one square dimension".to_string(),
                });
            }
            require_unitary(u, "first operand")?;
            require_unitary(f, "second operand")?;
            let anticommutator = &(u * f) + &(f * u);
            let (dim_ref, vectors, scale) = kernel_of(&anticommutator)?;

            let t = block_assembly(u, f);
            let t_dual = block_assembly(f, u);
            let (dim, _, _) = kernel_of(&t)?;
            let (dim_dual, _, _) = kernel_of(&t_dual)?;

            // Ker T = {(U v, v)/sqrt(2)} and Ker T' = {(F v, v)/sqrt(2)}
            // over v in the anticommutator kernel.
            let mut map_residual: f64 = 0.0;
            let half = 0.5_f64.sqrt();
            for v in &vectors {
                let uv = u.mul_vec(v);
                let mut x: Vec<C64> = Vec::with_capacity(2 * n);
                x.extend(uv.iter().map(|z| half * z));
                x.extend(v.iter().map(|z| half * z));
                map_residual = map_residual.max(vec_norm(&t.mul_vec(&x)));
                let fv = f.mul_vec(v);
                let mut y: Vec<C64> = Vec::with_capacity(2 * n);
                y.extend(fv.iter().map(|z| half * z));
                y.extend(v.iter().map(|z| half * z));
                map_residual = map_residual.max(vec_norm(&t_dual.mul_vec(&y)));
            }
            let holds =
                dim == dim_ref && dim_dual == dim_ref && map_residual <= 1e-8 * scale;
            Ok(EquivalenceReport {
                kernel_dims: (dim, dim_dual),
                reference_dim: Some(dim_ref),
                map_residual,
                holds,
            })
        }
    }
}

/// 1/2 [[1, U], [U*, 1]] paired against diag(F, F).
fn block_assembly(u: &ComplexMatrix, f: &ComplexMatrix) -> ComplexMatrix {
    let n = u.rows();
    let one = ComplexMatrix::identity(n);
    let mut p = ComplexMatrix::zeros(2 * n, 2 * n);
    p.set_block(0, 0, &one.scale_re(0.5));
    p.set_block(0, n, &u.scale_re(0.5));
    p.set_block(n, 0, &u.adjoint().scale_re(0.5));
    p.set_block(n, n, &one.scale_re(0.5));
    let mut ff = ComplexMatrix::zeros(2 * n, 2 * n);
    ff.set_block(0, 0, f);
    ff.set_block(n, n, f);
    let big_one = ComplexMatrix::identity(2 * n);
    &(&(&p * &ff) * &p) + &(&big_one - &p)
}
