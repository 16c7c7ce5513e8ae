//! Parity flips through symmetry-respecting fiber augmentation.
//!
//! A parity-valued position cannot be killed by deformation: adding a small
//! decoupled fiber and rotating its operand by a half turn pumps exactly one
//! vector in and out of the kernel while every displayed relation stays
//! intact along the whole path. This module carries explicit such fibers for
//! the four even-even parity positions. The added blocks satisfy the row and
//! column relations with the correct operator parities, but not the cross
//! commutators between the two sides; augmented problems therefore validate
//! under the relations-only policy, which is exactly the structure the
//! parity argument needs.

use clifford::{OperatorRole, SymmetryOperator};
use linalg_core::{c64, i_sigma2, singular_spectrum, sigma1, ComplexMatrix};

use crate::error::PairingError;
use crate::kernel::{count_near_kernel, EdgeSplit, KernelConfig, SiteLayout};
use crate::problem::{PairingKind, PairingProblem, Truncation, ValidationPolicy};

/// Fiber operators for one parity position.
#[derive(Clone, Debug)]
pub struct AugmentBlocks {
    pub s_block: ComplexMatrix,
    pub s_parity: i8,
    pub sigma_block: ComplexMatrix,
    pub sigma_parity: i8,
    pub p_block: ComplexMatrix,
    /// Antisymmetric generator with square -1; the fiber unitary is
    /// cos(lambda) 1 + sin(lambda) generator.
    pub generator: ComplexMatrix,
    pub fiber_dim: usize,
}

impl AugmentBlocks {
    /// The rotated fiber unitary at parameter `lambda`.
    pub fn rotation(&self, lambda: f64) -> ComplexMatrix {
        let one = ComplexMatrix::identity(self.fiber_dim);
        &one.scale_re(lambda.cos()) + &self.generator.scale_re(lambda.sin())
    }

    /// The fiber Fredholm operator p r(lambda) p + 1 - p.
    pub fn block_operator(&self, lambda: f64) -> ComplexMatrix {
        let one = ComplexMatrix::identity(self.fiber_dim);
        let r = self.rotation(lambda);
        &(&(&self.p_block * &r) * &self.p_block) + &(&one - &self.p_block)
    }
}

/// Left multiplication by the quaternion unit i on the basis (1, i, j, k).
fn quat_i() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[0.0, -1.0, 0.0, 0.0],
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, -1.0],
        &[0.0, 0.0, 1.0, 0.0],
    ])
}

/// Left multiplication by j.
fn quat_j() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[0.0, 0.0, -1.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, -1.0, 0.0, 0.0],
    ])
}

/// Left multiplication by k.
fn quat_k() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[0.0, 0.0, 0.0, -1.0],
        &[0.0, 0.0, -1.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[1.0, 0.0, 0.0, 0.0],
    ])
}

/// Fiber operators for the parity position (j, d).
///
/// Three positions take a two-dimensional fiber with a rank-one real
/// projection. The quaternionic position (4, 6) provably admits no
/// two-dimensional fiber (the odd state-side operator forces a Kramers pair
/// into any invariant subspace) and no real projection on a four-dimensional
/// one (for real p the pairing form p X p of any real antisymmetric X
/// vanishes identically), so its projection is a genuinely complex rank-two
/// projection on C^4 built from a vector and its quaternionic partner.
pub fn augment_blocks(j: usize, d: usize) -> Result<AugmentBlocks, PairingError> {
    match (j, d) {
        (0, 2) => Ok(AugmentBlocks {
            s_block: ComplexMatrix::identity(2),
            s_parity: 1,
            sigma_block: sigma1(),
            sigma_parity: 1,
            p_block: ComplexMatrix::diag_real(&[1.0, 0.0]),
            generator: i_sigma2(),
            fiber_dim: 2,
        }),
        (2, 4) => Ok(AugmentBlocks {
            s_block: sigma1(),
            s_parity: 1,
            sigma_block: i_sigma2(),
            sigma_parity: -1,
            p_block: ComplexMatrix::diag_real(&[1.0, 0.0]),
            generator: i_sigma2(),
            fiber_dim: 2,
        }),
        (6, 8) => Ok(AugmentBlocks {
            s_block: i_sigma2(),
            s_parity: -1,
            sigma_block: ComplexMatrix::identity(2),
            sigma_parity: 1,
            p_block: ComplexMatrix::diag_real(&[1.0, 0.0]),
            generator: i_sigma2(),
            fiber_dim: 2,
        }),
        (4, 6) => {
            // psi = (a, 0, 1, d) / sqrt(3) with a = exp(i pi/3) and
            // d = exp(2 i pi/3); phi is its partner under v -> L_i conj(v).
            // The constraints a^2 + 1 + d^2 = 0 and Im a = Im d make the
            // rank-two projection psi psi* + phi phi* couple to the rotation
            // generator through exactly one channel, so the fiber kernel at
            // the half turn is one-dimensional despite the quaternionic
            // symmetry of the position.
            let s3 = 3.0_f64.sqrt();
            let a = c64(0.5, 0.5 * s3);
            let dd = c64(-0.5, 0.5 * s3);
            let norm = 1.0 / s3;
            let psi = [
                a * norm,
                c64(0.0, 0.0),
                c64(norm, 0.0),
                dd * norm,
            ];
            let phi = [
                c64(0.0, 0.0),
                a.conj() * norm,
                -dd.conj() * norm,
                c64(norm, 0.0),
            ];
            let p_block = ComplexMatrix::from_fn(4, 4, |i, j| {
                psi[i] * psi[j].conj() + phi[i] * phi[j].conj()
            });
            let generator = (&quat_i() + &quat_j()).scale_re(1.0 / 2.0_f64.sqrt());
            Ok(AugmentBlocks {
                s_block: quat_i(),
                s_parity: -1,
                sigma_block: quat_k(),
                sigma_parity: -1,
                p_block,
                generator,
                fiber_dim: 4,
            })
        }
        _ => Err(PairingError::UnsupportedPosition {
            context: format!("no augmentation fiber at (j={j}, d={d})"),
        }),
    }
}

/// The problem with the fiber glued onto every truncation level at rotation
/// parameter `lambda`.
///
/// Validates under the relations-only policy: the added blocks keep every
/// row and column relation with matching operator parities, while the cross
/// commutators are deliberately given up on the fiber.
pub fn homotopy_augment(
    problem: &PairingProblem,
    lambda: f64,
) -> Result<PairingProblem, PairingError> {
    if problem.kind != PairingKind::ProjectionUnitary || problem.j % 2 != 0 || problem.d % 2 != 0
    {
        return Err(PairingError::UnsupportedPosition {
            context: "augmentation applies to projection-unitary pairings at even positions"
                .to_string(),
        });
    }
    let blocks = augment_blocks(problem.j, problem.d)?;
    let r = blocks.rotation(lambda);
    let mut truncations = Vec::with_capacity(problem.truncations.len());
    for tr in &problem.truncations {
        let s = tr.s.as_ref().ok_or(PairingError::MissingOperator {
            name: "S",
            j: problem.j,
            d: problem.d,
        })?;
        let sigma = tr.sigma.as_ref().ok_or(PairingError::MissingOperator {
            name: "Sigma",
            j: problem.j,
            d: problem.d,
        })?;
        if s.parity != blocks.s_parity || sigma.parity != blocks.sigma_parity {
            return Err(PairingError::OperandRelation {
                context: "fiber operator parities disagree with the base problem".to_string(),
                residual: f64::INFINITY,
            });
        }
        let s_aug = SymmetryOperator::new(
            s.matrix.direct_sum(&blocks.s_block),
            OperatorRole::Generic,
        )?;
        let sigma_aug = SymmetryOperator::new(
            sigma.matrix.direct_sum(&blocks.sigma_block),
            OperatorRole::Generic,
        )?;
        truncations.push(Truncation {
            layout: SiteLayout::flat(tr.layout.dim() + blocks.fiber_dim),
            left: tr.left.direct_sum(&blocks.p_block),
            right: tr.right.direct_sum(&r),
            s: Some(s_aug),
            s_hat: None,
            sigma: Some(sigma_aug),
        });
    }
    PairingProblem::with_policy(
        problem.kind,
        problem.j,
        problem.d,
        truncations,
        ValidationPolicy::RelationsOnly,
    )
}

/// Parity of the augmented kernel at one truncation level.
#[derive(Clone, Debug)]
pub struct FlipReport {
    pub lambda: f64,
    /// Edge split of the base operator's near kernel.
    pub base_split: EdgeSplit,
    /// Kernel dimension of the fiber operator.
    pub block_kernel: usize,
    /// (base left-edge count + fiber kernel) mod 2.
    pub parity: u8,
}

/// Count the augmented kernel summand by summand.
///
/// The augmented operator is block diagonal, so its kernel is the direct sum
/// of the base kernel and the fiber kernel; counting the parts separately
/// avoids mixing near-degenerate singular vectors across summands. The
/// augmented problem is still constructed (and thereby validated) first.
pub fn augmented_parity(
    problem: &PairingProblem,
    level: usize,
    lambda: f64,
    cfg: &KernelConfig,
) -> Result<FlipReport, PairingError> {
    let blocks = augment_blocks(problem.j, problem.d)?;
    homotopy_augment(problem, lambda)?;
    let assembled = problem.assemble(level)?;
    let diagnostics = count_near_kernel(&assembled.t, &assembled.layout, cfg)?;
    let t_block = blocks.block_operator(lambda);
    let spectrum = singular_spectrum(&t_block)?;
    let block_kernel = spectrum.count_below(cfg.kernel_tol);
    let parity = ((diagnostics.split.left + block_kernel) % 2) as u8;
    Ok(FlipReport {
        lambda,
        base_split: diagnostics.split,
        block_kernel,
        parity,
    })
}
