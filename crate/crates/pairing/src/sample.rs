//! Random operands respecting declared antiunitary relations.
//!
//! Every sampler here works by symmetrization: draw a Gaussian seed, average
//! it with its image under each relation's antilinear involution, and take a
//! structured factor (polar unitary, spectral projection) that provably
//! inherits the relation. The factor step matters: naive averaging of a
//! unitary is not unitary, but the polar factor of a symmetrized matrix
//! satisfies the same relation because the antilinear map sends polar
//! decompositions to polar decompositions.

use clifford::SymmetryOperator;
use linalg_core::{c64, hermitian_eig, spectral_projection, ComplexMatrix, LinalgError};
use rand::Rng;
use symmetry::{ConjKind, RelationTarget, SymmetryRelation};

use crate::error::PairingError;

/// Redraw budget for rejection steps (singular seeds, gapless spectra).
const MAX_DRAWS: usize = 64;

/// One standard normal via Box-Muller.
fn gaussian(rng: &mut impl Rng) -> f64 {
    let mut u: f64 = rng.gen();
    while u <= f64::MIN_POSITIVE {
        u = rng.gen();
    }
    let v: f64 = rng.gen();
    (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
}

/// Square matrix with independent complex Gaussian entries.
pub fn gaussian_matrix(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| c64(gaussian(rng), gaussian(rng)))
}

/// Gaussian Hermitian matrix (GUE up to scale).
pub fn gaussian_hermitian(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let a = gaussian_matrix(n, rng);
    (&a + &a.adjoint()).scale_re(0.5)
}

/// Unitary polar factor U = M (M* M)^{-1/2}.
///
/// Fails on (numerically) singular input; the samplers redraw instead of
/// propagating that failure.
pub fn polar_unitary(m: &ComplexMatrix) -> Result<ComplexMatrix, PairingError> {
    let gram = &m.adjoint() * m;
    let dec = hermitian_eig(&gram)?;
    let lam_max = dec.eigenvalues.last().copied().unwrap_or(0.0);
    let floor = 1e-12 * lam_max.max(1.0);
    if dec.eigenvalues.first().copied().unwrap_or(0.0) <= floor {
        return Err(PairingError::IndeterminateKernel {
            tol: floor,
            min_ratio: 0.0,
            tail: dec.eigenvalues.iter().take(4).copied().collect(),
        });
    }
    let inv_sqrt: Vec<f64> = dec.eigenvalues.iter().map(|&l| 1.0 / l.sqrt()).collect();
    let v = &dec.eigenvectors;
    let core = &(v * &ComplexMatrix::diag_real(&inv_sqrt)) * &v.adjoint();
    Ok(m * &core)
}

/// Haar-distributed unitary.
pub fn sample_unitary(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    for _ in 0..MAX_DRAWS {
        if let Ok(u) = polar_unitary(&gaussian_matrix(n, rng)) {
            return u;
        }
    }
    unreachable!("repeated singular Gaussian draws")
}

/// Image of `a` under the antilinear involution of one relation, ignoring
/// the target: sigma* conj(a) sigma or sigma* a^t sigma.
fn relation_image(a: &ComplexMatrix, sigma: &ComplexMatrix, conj: ConjKind) -> ComplexMatrix {
    let inner = match conj {
        ConjKind::Conjugate => a.conj(),
        ConjKind::Transpose => a.transpose(),
    };
    &(&sigma.adjoint() * &inner) * sigma
}

/// Random unitary F with sigma* conj(F) sigma = F or sigma* F^t sigma = F,
/// commuting with each operator in `commuting`.
///
/// The relation must target the operator itself; complement relations only
/// make sense for projections. The polar factor inherits both the relation
/// and the commutation because each map sends polar decompositions to polar
/// decompositions.
pub fn sample_related_unitary(
    op: &SymmetryOperator,
    rel: &SymmetryRelation,
    commuting: &[&SymmetryOperator],
    rng: &mut impl Rng,
) -> Result<ComplexMatrix, PairingError> {
    if rel.target != RelationTarget::Same {
        return Err(PairingError::DescriptorMismatch {
            context: "unitary sampling requires a relation targeting the operator itself"
                .to_string(),
        });
    }
    if op.parity != rel.square {
        return Err(PairingError::OperandRelation {
            context: format!(
                "operator squares to {} but the relation demands {}",
                op.parity, rel.square
            ),
            residual: f64::INFINITY,
        });
    }
    let n = op.matrix.rows();
    for _ in 0..MAX_DRAWS {
        let a = gaussian_matrix(n, rng);
        let mut m = (&a + &relation_image(&a, &op.matrix, rel.conj)).scale_re(0.5);
        for other in commuting {
            let moved = &(&other.matrix * &m) * &other.matrix.adjoint();
            m = (&m + &moved).scale_re(0.5);
        }
        if let Ok(u) = polar_unitary(&m) {
            return Ok(u);
        }
    }
    Err(PairingError::UnstableFamily {
        context: "symmetrized Gaussian seeds kept landing on singular matrices".to_string(),
    })
}

/// Random projection P satisfying every listed relation and commuting with
/// every listed operator.
///
/// Built as the negative spectral half of a symmetrized Gaussian Hermitian
/// matrix. A `Same` target forces sigma* conj(H) sigma = H, a `Complement`
/// target forces sigma* conj(H) sigma = -H (so the spectrum is symmetric and
/// the projection has exactly half rank). The averaging maps commute when
/// the operators do, so one pass through the list suffices.
pub fn sample_related_projection(
    relations: &[(&SymmetryOperator, &SymmetryRelation)],
    commuting: &[&SymmetryOperator],
    n: usize,
    rng: &mut impl Rng,
) -> Result<ComplexMatrix, PairingError> {
    for (op, rel) in relations {
        if op.parity != rel.square {
            return Err(PairingError::OperandRelation {
                context: format!(
                    "operator squares to {} but the relation demands {}",
                    op.parity, rel.square
                ),
                residual: f64::INFINITY,
            });
        }
        if rel.conj != ConjKind::Conjugate {
            return Err(PairingError::DescriptorMismatch {
                context: "projection relations act by conjugation".to_string(),
            });
        }
    }
    for attempt in 0..MAX_DRAWS {
        let mut h = gaussian_hermitian(n, rng);
        for (op, rel) in relations {
            let image = relation_image(&h, &op.matrix, ConjKind::Conjugate);
            h = match rel.target {
                RelationTarget::Same => (&h + &image).scale_re(0.5),
                RelationTarget::Complement | RelationTarget::Negative => {
                    (&h - &image).scale_re(0.5)
                }
            };
        }
        for op in commuting {
            let moved = &(&op.matrix * &h) * &op.matrix.adjoint();
            h = (&h + &moved).scale_re(0.5);
        }
        match spectral_projection(&h, 0.0) {
            Ok(p) => return Ok(p),
            Err(LinalgError::GaplessAtFermiLevel { .. }) if attempt + 1 < MAX_DRAWS => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Err(PairingError::UnstableFamily {
        context: "symmetrized Hermitian seeds kept landing on gapless spectra".to_string(),
    })
}

/// Random T with theta* conj(T) theta = T for an odd operator theta.
pub fn sample_quaternionic(
    theta: &SymmetryOperator,
    rng: &mut impl Rng,
) -> Result<ComplexMatrix, PairingError> {
    if theta.parity != -1 {
        return Err(PairingError::OperandRelation {
            context: "quaternionic sampling needs an operator squaring to -1".to_string(),
            residual: f64::INFINITY,
        });
    }
    let a = gaussian_matrix(theta.matrix.rows(), rng);
    Ok((&a + &relation_image(&a, &theta.matrix, ConjKind::Conjugate)).scale_re(0.5))
}

/// Random T with theta* T^t theta = T for an odd operator theta.
pub fn sample_odd_symmetric(
    theta: &SymmetryOperator,
    rng: &mut impl Rng,
) -> Result<ComplexMatrix, PairingError> {
    if theta.parity != -1 {
        return Err(PairingError::OperandRelation {
            context: "odd-symmetric sampling needs an operator squaring to -1".to_string(),
            residual: f64::INFINITY,
        });
    }
    let a = gaussian_matrix(theta.matrix.rows(), rng);
    Ok((&a + &relation_image(&a, &theta.matrix, ConjKind::Transpose)).scale_re(0.5))
}

/// Cut a kernel pair into an odd-symmetric operator.
///
/// For a random unit vector v, the partner w = theta conj(v) spans the new
/// cokernel direction and T' = (1 - w w*) T (1 - v v*) keeps the relation
/// theta* T'^t theta = T'. The kernel of T' is the exact pair
/// {v, T^{-1} w}: the overlap <v, T^{-1} w> vanishes identically because
/// T^{-1} theta is antisymmetric, so the cut leaves the second vector
/// untouched. No one-dimensional variant exists on a finite space: theta T'
/// is antisymmetric, which forces even rank and hence an even kernel. Odd
/// zero-mode counts belong to half-space compressions, where the edge
/// separates the two members of the pair.
pub fn plant_odd_symmetric_kernel(
    t: &ComplexMatrix,
    theta: &SymmetryOperator,
    rng: &mut impl Rng,
) -> ComplexMatrix {
    let n = t.rows();
    let mut v: Vec<_> = (0..n).map(|_| c64(gaussian(rng), gaussian(rng))).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut v {
        *z /= norm;
    }
    let w = theta.matrix.mul_vec(&v.iter().map(|z| z.conj()).collect::<Vec<_>>());
    let vv = ComplexMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj());
    let ww = ComplexMatrix::from_fn(n, n, |i, j| w[i] * w[j].conj());
    let one = ComplexMatrix::identity(n);
    &(&(&one - &ww) * t) * &(&one - &vv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clifford::OperatorRole;
    use linalg_core::{i_sigma2, sigma1};
    use rand::rngs::StdRng;
    use rand::SeedableRng;
    use symmetry::{PROJECTION_ROW_RELATIONS, UNITARY_COLUMN_RELATIONS};

    fn rng(seed: u64) -> StdRng {
        StdRng::seed_from_u64(seed)
    }

    fn op(m: ComplexMatrix) -> SymmetryOperator {
        SymmetryOperator::new(m, OperatorRole::Generic).unwrap()
    }

    #[test]
    fn polar_factor_is_unitary() {
        let mut rng = rng(7);
        let u = sample_unitary(6, &mut rng);
        assert!(u.unitary_residual() < 1e-10);
    }

    #[test]
    fn gaussian_moments_are_plausible() {
        let mut rng = rng(11);
        let samples: Vec<f64> = (0..20_000).map(|_| gaussian(&mut rng)).collect();
        let mean = samples.iter().sum::<f64>() / samples.len() as f64;
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>()
            / samples.len() as f64;
        assert!(mean.abs() < 0.05, "mean {mean}");
        assert!((var - 1.0).abs() < 0.05, "variance {var}");
    }

    #[test]
    fn symmetric_unitary_holds_its_relation() {
        // Column 2: sigma* F^t sigma = F with sigma even.
        let sigma = op(sigma1().kron(&ComplexMatrix::identity(3)));
        let rel = &UNITARY_COLUMN_RELATIONS[0];
        let mut rng = rng(23);
        let f = sample_related_unitary(&sigma, rel, &[], &mut rng).unwrap();
        assert!(f.unitary_residual() < 1e-10);
        let image = relation_image(&f, &sigma.matrix, ConjKind::Transpose);
        assert!(f.approx_eq(&image, 1e-10));
    }

    #[test]
    fn quaternionic_unitary_holds_its_relation() {
        // Column 4: sigma* conj(F) sigma = F with sigma odd.
        let sigma = op(i_sigma2().kron(&ComplexMatrix::identity(3)));
        let rel = &UNITARY_COLUMN_RELATIONS[1];
        let mut rng = rng(29);
        let f = sample_related_unitary(&sigma, rel, &[], &mut rng).unwrap();
        assert!(f.unitary_residual() < 1e-10);
        let image = relation_image(&f, &sigma.matrix, ConjKind::Conjugate);
        assert!(f.approx_eq(&image, 1e-10));
    }

    #[test]
    fn real_projection_from_row_zero() {
        let s = op(ComplexMatrix::identity(6));
        let row = &PROJECTION_ROW_RELATIONS[0];
        let mut rng = rng(31);
        let p = sample_related_projection(&[(&s, &row.primary)], &[], 6, &mut rng).unwrap();
        assert!(p.projection_residual() < 1e-10);
        assert!(p.imag_norm() < 1e-10);
    }

    #[test]
    fn complement_projection_has_half_rank() {
        // Row 2: s* conj(P) s = 1 - P with s even.
        let s = op(sigma1().kron(&ComplexMatrix::identity(4)));
        let row = &PROJECTION_ROW_RELATIONS[2];
        let mut rng = rng(37);
        let p = sample_related_projection(&[(&s, &row.primary)], &[], 8, &mut rng).unwrap();
        assert!(p.projection_residual() < 1e-10);
        let image = relation_image(&p, &s.matrix, ConjKind::Conjugate);
        let complement = &ComplexMatrix::identity(8) - &p;
        assert!(image.approx_eq(&complement, 1e-10));
        // Trace = rank for a projection.
        let trace: f64 = (0..8).map(|i| p[(i, i)].re).sum();
        assert!((trace - 4.0).abs() < 1e-9);
    }

    #[test]
    fn commuting_constraint_is_respected() {
        let s = op(ComplexMatrix::identity(8));
        let sigma = op(sigma1().kron(&ComplexMatrix::identity(4)));
        let row = &PROJECTION_ROW_RELATIONS[0];
        let mut rng = rng(41);
        let p =
            sample_related_projection(&[(&s, &row.primary)], &[&sigma], 8, &mut rng).unwrap();
        let comm = &(&sigma.matrix * &p) - &(&p * &sigma.matrix);
        assert!(comm.norm() < 1e-10);
    }

    #[test]
    fn planted_kernel_keeps_odd_symmetry() {
        let theta = op(i_sigma2().kron(&ComplexMatrix::identity(4)));
        let mut rng = rng(43);
        let t = sample_odd_symmetric(&theta, &mut rng).unwrap();
        let image = relation_image(&t, &theta.matrix, ConjKind::Transpose);
        assert!(t.approx_eq(&image, 1e-10));
        let planted = plant_odd_symmetric_kernel(&t, &theta, &mut rng);
        let image = relation_image(&planted, &theta.matrix, ConjKind::Transpose);
        assert!(planted.approx_eq(&image, 1e-9));
        // The cut plants v together with its forced partner T^{-1} theta
        // conj(v): finite odd-symmetric operators never have odd kernels.
        let spectrum = linalg_core::singular_spectrum(&planted).unwrap();
        let scale = spectrum.values[0];
        assert_eq!(spectrum.count_below(1e-7 * scale), 2);
    }
}
