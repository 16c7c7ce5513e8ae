//! Kramers-type degeneracy checks behind the even-integer and parity
//! entries.
//!
//! Four antilinear pairing mechanisms force eigenvalues of T*T to come in
//! pairs. Each context below names one mechanism by the structure it needs,
//! carries the operators entering the partner formula, and knows whether the
//! zero eigenvalue participates:
//!
//! * quaternionic relation theta* conj(T) theta = T: all eigenvalues paired,
//!   partner w = theta conj(v);
//! * odd-symmetric relation theta* T^t theta = T: nonzero eigenvalues
//!   paired, partner w = theta conj(T v);
//! * Lagrangian frame against a unitary symmetric under an opposite-parity
//!   operator: all eigenvalues of the compression paired;
//! * two Lagrangian frames against a unitary real under an equal-parity
//!   operator: nonzero eigenvalues of the cross compression paired.

use clifford::SymmetryOperator;
use linalg_core::{hermitian_eig, ComplexMatrix};
use symmetry::{
    check_descriptor, ConjKind, LagrangianFrame, RelationTarget, SymmetryRelation, RELATION_TOL,
};

use crate::error::PairingError;

/// Relative width below which adjacent eigenvalues of T*T belong to one
/// degenerate cluster.
pub const CLUSTER_TOL: f64 = 1e-8;

/// One (numerically) degenerate eigenvalue of T*T.
#[derive(Clone, Copy, Debug)]
pub struct EigenCluster {
    /// Mean of the clustered eigenvalues.
    pub value: f64,
    pub size: usize,
}

/// Operators entering one degeneracy mechanism.
#[derive(Clone, Debug)]
pub enum KramersContext {
    /// theta* conj(T) theta = T with theta odd; every eigenvalue pairs.
    Quaternionic {
        t: ComplexMatrix,
        theta: SymmetryOperator,
    },
    /// theta* T^t theta = T with theta odd; nonzero eigenvalues pair.
    OddSymmetric {
        t: ComplexMatrix,
        theta: SymmetryOperator,
    },
    /// P Lagrangian for S (square eta), F symmetric for sigma (square
    /// -eta), each commuting with the other side's operator. The compression
    /// T0 = Phi* F Phi has every eigenvalue of T0* T0 paired.
    SymmetricCompression {
        f: ComplexMatrix,
        sigma: SymmetryOperator,
        frame: LagrangianFrame,
    },
    /// P, Q Lagrangian for the same S (square eta), F real for sigma (square
    /// eta), P, Q commuting with sigma and F with S. The cross compression
    /// T0 = Psi* F Phi has every nonzero eigenvalue of T0* T0 paired.
    RealCompression {
        f: ComplexMatrix,
        sigma: SymmetryOperator,
        frame_p: LagrangianFrame,
        frame_q: LagrangianFrame,
    },
}

/// Verified multiplicity structure of T*T for one context.
#[derive(Clone, Debug)]
pub struct MultiplicityReport {
    pub clusters: Vec<EigenCluster>,
    /// Eigenvalues in the cluster at zero (empty cluster means none).
    pub zero_modes: usize,
    /// Every cluster the mechanism claims to pair has even size.
    pub all_required_even: bool,
    /// Largest relative residual among the hypothesis relations.
    pub hypothesis_residual: f64,
    /// Largest relative residual of T*T w = lambda w over checked partners.
    pub partner_eigen_residual: f64,
    /// Largest normalized overlap |<v, w>| over checked partners.
    pub partner_overlap: f64,
    /// Number of eigenvectors whose partner was checked.
    pub partners_checked: usize,
}

fn expect_relation(
    a: &ComplexMatrix,
    op: &SymmetryOperator,
    rel: &SymmetryRelation,
    context: &str,
) -> Result<f64, PairingError> {
    if op.parity != rel.square {
        return Err(PairingError::OperandRelation {
            context: format!("{context}: operator parity {} so the mechanism does not apply", op.parity),
            residual: f64::INFINITY,
        });
    }
    let check = check_descriptor(a, &op.matrix, rel)?;
    if !check.holds {
        return Err(PairingError::OperandRelation {
            context: context.to_string(),
            residual: check.residual,
        });
    }
    Ok(check.residual)
}

fn expect_commutes(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    context: &str,
) -> Result<f64, PairingError> {
    let residual = (&(a * b) - &(b * a)).norm();
    let tol = RELATION_TOL * a.norm().max(1.0) * b.norm().max(1.0);
    if residual > tol {
        return Err(PairingError::OperandRelation {
            context: format!("commutator [{context}] does not vanish"),
            residual,
        });
    }
    Ok(residual)
}

struct Mechanism {
    /// Operator whose squared singular values are clustered.
    t0: ComplexMatrix,
    /// w = conj(partner . v).
    partner: ComplexMatrix,
    /// Whether the zero cluster must pair as well.
    pairs_zero: bool,
    hypothesis_residual: f64,
}

fn build(ctx: &KramersContext) -> Result<Mechanism, PairingError> {
    match ctx {
        KramersContext::Quaternionic { t, theta } => {
            let rel = SymmetryRelation {
                conj: ConjKind::Conjugate,
                target: RelationTarget::Same,
                square: -1,
            };
            let residual = expect_relation(t, theta, &rel, "quaternionic relation")?;
            Ok(Mechanism {
                t0: t.clone(),
                partner: theta.matrix.clone(),
                pairs_zero: true,
                hypothesis_residual: residual,
            })
        }
        KramersContext::OddSymmetric { t, theta } => {
            let rel = SymmetryRelation {
                conj: ConjKind::Transpose,
                target: RelationTarget::Same,
                square: -1,
            };
            let residual = expect_relation(t, theta, &rel, "odd-symmetric relation")?;
            Ok(Mechanism {
                t0: t.clone(),
                partner: &theta.matrix * t,
                pairs_zero: false,
                hypothesis_residual: residual,
            })
        }
        KramersContext::SymmetricCompression { f, sigma, frame } => {
            let eta = frame.symmetry.parity;
            if sigma.parity != -eta {
                return Err(PairingError::OperandRelation {
                    context: format!(
                        "frame symmetry squares to {eta}, so its partner must square to {}",
                        -eta
                    ),
                    residual: f64::INFINITY,
                });
            }
            let rel = SymmetryRelation {
                conj: ConjKind::Transpose,
                target: RelationTarget::Same,
                square: sigma.parity,
            };
            let mut residual = expect_relation(f, sigma, &rel, "symmetric-unitary relation")?;
            residual = residual.max(frame.residual());
            residual = residual.max(expect_commutes(
                &frame.symmetry.matrix,
                f,
                "frame symmetry, unitary",
            )?);
            residual = residual.max(expect_commutes(
                &sigma.matrix,
                &frame.projection(),
                "unitary symmetry, projection",
            )?);
            let phi = &frame.phi;
            let t0 = &(&phi.adjoint() * f) * phi;
            // w = conj( (S conj(Phi))* Sigma* F Phi v )
            let partner =
                &(&(&frame.complement().adjoint() * &sigma.matrix.adjoint()) * f) * phi;
            Ok(Mechanism {
                t0,
                partner,
                pairs_zero: true,
                hypothesis_residual: residual,
            })
        }
        KramersContext::RealCompression {
            f,
            sigma,
            frame_p,
            frame_q,
        } => {
            let eta = frame_p.symmetry.parity;
            if frame_q.symmetry.parity != eta
                || frame_p
                    .symmetry
                    .matrix
                    .dist(&frame_q.symmetry.matrix)
                    > RELATION_TOL * frame_p.symmetry.matrix.norm().max(1.0)
            {
                return Err(PairingError::OperandRelation {
                    context: "the two frames must be Lagrangian for the same symmetry"
                        .to_string(),
                    residual: f64::INFINITY,
                });
            }
            if sigma.parity != eta {
                return Err(PairingError::OperandRelation {
                    context: format!(
                        "frame symmetry squares to {eta}, so the unitary's operator must too"
                    ),
                    residual: f64::INFINITY,
                });
            }
            let rel = SymmetryRelation {
                conj: ConjKind::Conjugate,
                target: RelationTarget::Same,
                square: sigma.parity,
            };
            let mut residual = expect_relation(f, sigma, &rel, "real-unitary relation")?;
            residual = residual.max(frame_p.residual()).max(frame_q.residual());
            residual = residual.max(expect_commutes(
                &frame_p.symmetry.matrix,
                f,
                "frame symmetry, unitary",
            )?);
            residual = residual.max(expect_commutes(
                &sigma.matrix,
                &frame_p.projection(),
                "unitary symmetry, first projection",
            )?);
            residual = residual.max(expect_commutes(
                &sigma.matrix,
                &frame_q.projection(),
                "unitary symmetry, second projection",
            )?);
            let phi = &frame_p.phi;
            let psi = &frame_q.phi;
            let t0 = &(&psi.adjoint() * f) * phi;
            // w = conj( (S conj(Phi))* Sigma F* Psi Psi* F Phi v )
            let fp = f * phi;
            let partner = &(&(&(&frame_p.complement().adjoint() * &sigma.matrix)
                * &f.adjoint())
                * &(psi * &psi.adjoint()))
                * &fp;
            Ok(Mechanism {
                t0,
                partner,
                pairs_zero: false,
                hypothesis_residual: residual,
            })
        }
    }
}

/// Validate the hypothesis relations, cluster the eigenvalues of T*T, and
/// confirm the claimed degeneracies with the explicit antilinear partners.
pub fn kramers_verify(ctx: &KramersContext) -> Result<MultiplicityReport, PairingError> {
    let mechanism = build(ctx)?;
    let gram = &mechanism.t0.adjoint() * &mechanism.t0;
    let gram = (&gram + &gram.adjoint()).scale_re(0.5);
    let dec = hermitian_eig(&gram)?;
    let lam = &dec.eigenvalues;
    let n = lam.len();
    let tau = CLUSTER_TOL * lam.last().copied().unwrap_or(0.0).max(1.0);

    let mut clusters: Vec<EigenCluster> = Vec::new();
    let mut start = 0;
    for k in 1..=n {
        if k == n || lam[k] - lam[k - 1] > tau {
            let size = k - start;
            let value = lam[start..k].iter().sum::<f64>() / size as f64;
            clusters.push(EigenCluster { value, size });
            start = k;
        }
    }
    let zero_modes = lam.iter().take_while(|&&l| l.abs() <= tau).count();
    let all_required_even = clusters
        .iter()
        .filter(|c| mechanism.pairs_zero || c.value.abs() > tau)
        .all(|c| c.size % 2 == 0);

    // Partner check: w = conj(partner . v) must be a unit-overlap-free
    // eigenvector at the same eigenvalue. Vectors whose partner degenerates
    // (zero modes of the nonzero-only mechanisms, and compressions at the
    // top of the spectrum where the partner norm vanishes) are skipped.
    let w_all = (&mechanism.partner * &dec.eigenvectors).conj();
    let gw = &gram * &w_all;
    let mut partner_eigen_residual: f64 = 0.0;
    let mut partner_overlap: f64 = 0.0;
    let mut partners_checked = 0;
    for k in 0..n {
        if !mechanism.pairs_zero && lam[k] <= tau {
            continue;
        }
        let w = w_all.col(k);
        let w_norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if w_norm <= tau.sqrt() {
            continue;
        }
        let v = dec.eigenvectors.col(k);
        let overlap = v
            .iter()
            .zip(&w)
            .map(|(a, b)| a.conj() * b)
            .sum::<linalg_core::C64>()
            .norm()
            / w_norm;
        let residual = (0..n)
            .map(|i| (gw[(i, k)] - lam[k] * w[i]).norm_sqr())
            .sum::<f64>()
            .sqrt()
            / (w_norm * lam.last().copied().unwrap_or(1.0).max(1.0));
        partner_overlap = partner_overlap.max(overlap);
        partner_eigen_residual = partner_eigen_residual.max(residual);
        partners_checked += 1;
    }

    Ok(MultiplicityReport {
        clusters,
        zero_modes,
        all_required_even,
        hypothesis_residual: mechanism.hypothesis_residual,
        partner_eigen_residual,
        partner_overlap,
        partners_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{
        plant_odd_symmetric_kernel, sample_odd_symmetric, sample_quaternionic,
        sample_related_projection, sample_related_unitary,
    };
    use clifford::OperatorRole;
    use linalg_core::{i_sigma2, sigma1};
    use rand::rngs::StdRng;
    use rand::SeedableRng;
    use symmetry::{lagrangian_frame, PROJECTION_ROW_RELATIONS, UNITARY_COLUMN_RELATIONS};

    fn op(m: ComplexMatrix) -> SymmetryOperator {
        SymmetryOperator::new(m, OperatorRole::Generic).unwrap()
    }

    fn odd_op(m: usize) -> SymmetryOperator {
        op(i_sigma2().kron(&ComplexMatrix::identity(m)))
    }

    #[test]
    fn quaternionic_spectrum_pairs_everywhere() {
        let theta = odd_op(4);
        let mut rng = StdRng::seed_from_u64(101);
        let t = sample_quaternionic(&theta, &mut rng).unwrap();
        let report = kramers_verify(&KramersContext::Quaternionic { t, theta }).unwrap();
        assert!(report.all_required_even);
        assert!(report.clusters.iter().all(|c| c.size == 2));
        assert!(report.partner_eigen_residual < 1e-8);
        assert!(report.partner_overlap < 1e-8);
        assert_eq!(report.partners_checked, 8);
    }

    #[test]
    fn odd_symmetric_partner_map_degenerates_on_the_zero_cluster() {
        // The transpose-type relation pairs nonzero singular values but says
        // nothing at zero: the partner formula w = theta conj(T v) returns
        // the zero vector on kernel vectors. On a finite box the zero
        // cluster is still even, for a different reason: theta T is
        // antisymmetric, so the rank is even. The planted cut therefore
        // carries a pair, v and T^{-1} theta conj(v).
        let theta = odd_op(4);
        let mut rng = StdRng::seed_from_u64(103);
        let t = sample_odd_symmetric(&theta, &mut rng).unwrap();
        let planted = plant_odd_symmetric_kernel(&t, &theta, &mut rng);
        let spectrum = linalg_core::singular_spectrum(&planted).unwrap();
        let raw: Vec<Vec<linalg_core::C64>> = (0..2)
            .map(|k| spectrum.right_vectors.col(planted.rows() - 1 - k))
            .collect();
        let kernel = linalg_core::polish_null_vectors(&planted, &raw).unwrap();
        let report =
            kramers_verify(&KramersContext::OddSymmetric { t: planted.clone(), theta: theta.clone() })
                .unwrap();
        assert!(report.all_required_even);
        assert_eq!(report.zero_modes, 2);
        assert!(report.partner_eigen_residual < 1e-8);
        assert!(report.partner_overlap < 1e-8);
        // Degeneration at zero: the partner of a kernel vector vanishes.
        for v in &kernel {
            let tv = planted.mul_vec(v);
            let w = theta
                .matrix
                .mul_vec(&tv.iter().map(|z| z.conj()).collect::<Vec<_>>());
            let norm: f64 = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            assert!(norm < 1e-10, "partner norm {norm}");
        }
    }

    #[test]
    fn symmetric_compression_pairs_the_zero_cluster_too() {
        // S = sigma_1 (x) 1 squares to +1, Sigma to -1; both commute.
        let m = 4;
        let s = op(sigma1().kron(&ComplexMatrix::identity(m)));
        let sigma = op(ComplexMatrix::identity(2).kron(&i_sigma2().kron(&ComplexMatrix::identity(m / 2))));
        let mut rng = StdRng::seed_from_u64(107);
        let p = sample_related_projection(
            &[(&s, &PROJECTION_ROW_RELATIONS[2].primary)],
            &[&sigma],
            2 * m,
            &mut rng,
        )
        .unwrap();
        let frame = lagrangian_frame(&p, &s).unwrap();
        // Column 6: sigma* F^t sigma = F with sigma odd.
        let f = sample_related_unitary(&sigma, &UNITARY_COLUMN_RELATIONS[2], &[&s], &mut rng)
            .unwrap();
        let report =
            kramers_verify(&KramersContext::SymmetricCompression { f, sigma, frame }).unwrap();
        assert!(report.all_required_even, "clusters {:?}", report.clusters);
        assert!(report.hypothesis_residual < 1e-9);
        assert!(report.partner_eigen_residual < 1e-8);
        assert!(report.partner_overlap < 1e-8);
    }

    #[test]
    fn real_compression_pairs_nonzero_clusters() {
        // S = sigma_1 (x) 1 and Sigma = 1 both square to +1.
        let m = 4;
        let s = op(sigma1().kron(&ComplexMatrix::identity(m)));
        let sigma = op(ComplexMatrix::identity(2 * m));
        let mut rng = StdRng::seed_from_u64(109);
        let row = &PROJECTION_ROW_RELATIONS[2].primary;
        let p = sample_related_projection(&[(&s, row)], &[&sigma], 2 * m, &mut rng).unwrap();
        let q = sample_related_projection(&[(&s, row)], &[&sigma], 2 * m, &mut rng).unwrap();
        let frame_p = lagrangian_frame(&p, &s).unwrap();
        let frame_q = lagrangian_frame(&q, &s).unwrap();
        // Column 8: sigma* conj(F) sigma = F with sigma even.
        let f = sample_related_unitary(&sigma, &UNITARY_COLUMN_RELATIONS[3], &[&s], &mut rng)
            .unwrap();
        let report = kramers_verify(&KramersContext::RealCompression {
            f,
            sigma,
            frame_p,
            frame_q,
        })
        .unwrap();
        assert!(report.all_required_even, "clusters {:?}", report.clusters);
        assert!(report.hypothesis_residual < 1e-9);
        assert!(report.partner_eigen_residual < 1e-8);
        assert!(report.partner_overlap < 1e-8);
        assert!(report.partners_checked > 0);
    }

    #[test]
    fn even_theta_is_rejected() {
        let theta = op(sigma1());
        let t = ComplexMatrix::identity(2);
        let err = kramers_verify(&KramersContext::Quaternionic { t, theta }).unwrap_err();
        assert!(matches!(err, PairingError::OperandRelation { .. }));
    }

    #[test]
    fn broken_hypothesis_is_rejected() {
        let theta = odd_op(2);
        // A generic matrix does not satisfy the quaternionic relation.
        let t = ComplexMatrix::from_fn(4, 4, |i, j| linalg_core::c64((i + 2 * j) as f64, 1.0));
        let err = kramers_verify(&KramersContext::Quaternionic { t, theta }).unwrap_err();
        assert!(matches!(err, PairingError::OperandRelation { .. }));
    }
}
