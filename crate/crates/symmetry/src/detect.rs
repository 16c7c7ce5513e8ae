//! Class detection from a Hamiltonian and declared candidate symmetries.
//!
//! Each candidate is tested in its declared role: time reversal must satisfy
//! S* conj(H) S = H, particle-hole S* conj(H) S = -H, chiral R* H R = -H.
//! Failing candidates are dropped (a broken symmetry simply is not there);
//! the surviving set fixes the class, and the role assignment table decides
//! which operator plays S and which S-hat for the index pairings.
//!
//! The commuting-pair convention is enforced loosely: two surviving
//! antiunitary candidates may either commute or anticommute, since a Cayley
//! rotation turns an anticommuting pair into a commuting one without moving
//! the class. Pairs doing neither are rejected.

use clifford::{OperatorRole, SymmetryOperator};
use linalg_core::ComplexMatrix;

use crate::class::SymmetryClass;
use crate::error::SymmetryError;
use crate::relation::{check_relation, RelationKind, RELATION_TOL};
use crate::tables::role_assignment;

/// One operator in the detected symmetry set. `index` points into the
/// candidate list; it is `None` for an operator derived as a product of two
/// declared ones.
#[derive(Clone, Debug)]
pub struct DetectedOperator {
    pub operator: SymmetryOperator,
    pub index: Option<usize>,
}

impl DetectedOperator {
    pub fn sign(&self) -> i8 {
        self.operator.parity
    }
}

/// Result of class detection.
#[derive(Clone, Debug)]
pub struct Detection {
    pub class: SymmetryClass,
    /// Operator playing the primary role S, when the class has one.
    pub s: Option<DetectedOperator>,
    /// Operator playing the secondary role S-hat (chiral rows only).
    pub s_hat: Option<DetectedOperator>,
    /// Chiral operator, declared or derived as the product S * S-hat.
    pub chiral: Option<DetectedOperator>,
    /// Candidates whose declared relation failed on H.
    pub rejected: Vec<usize>,
    /// True when the surviving antiunitary pair anticommutes.
    pub anticommuting_pair: bool,
}

fn holds(h: &ComplexMatrix, op: &SymmetryOperator, kind: RelationKind) -> Result<bool, SymmetryError> {
    Ok(check_relation(h, op, kind)?.holds)
}

/// R* H R compared against -H for a unitary chiral candidate.
fn chiral_holds(h: &ComplexMatrix, r: &ComplexMatrix) -> bool {
    let conjugated = &(&r.adjoint() * h) * r;
    conjugated.dist(&h.scale_re(-1.0)) <= RELATION_TOL * h.norm()
}

struct Survivor {
    /// Position in the candidate list; `None` for a derived operator.
    index: Option<usize>,
    operator: SymmetryOperator,
}

fn describe(index: Option<usize>) -> String {
    match index {
        Some(i) => i.to_string(),
        None => "derived".to_string(),
    }
}

/// Detect the symmetry class of a self-adjoint H from declared candidates.
///
/// Candidates must carry one of the physical roles (time reversal,
/// particle-hole, chiral). At most one candidate per role may survive;
/// surviving pairs must commute or anticommute; a surviving chiral operator
/// must match the product of the surviving antiunitary pair up to sign.
pub fn detect_class(
    h: &ComplexMatrix,
    candidates: &[SymmetryOperator],
) -> Result<Detection, SymmetryError> {
    let n = h.rows();
    if !h.is_square() {
        return Err(SymmetryError::DimensionMismatch {
            context: format!("hamiltonian is {}x{}", h.rows(), h.cols()),
        });
    }
    let herm = h.hermitian_residual();
    if herm > RELATION_TOL * h.norm().max(1.0) {
        return Err(SymmetryError::NotSelfAdjoint { residual: herm });
    }

    let mut trs: Option<Survivor> = None;
    let mut phs: Option<Survivor> = None;
    let mut chi: Option<Survivor> = None;
    let mut rejected = Vec::new();

    for (index, candidate) in candidates.iter().enumerate() {
        if candidate.matrix.rows() != n {
            return Err(SymmetryError::DimensionMismatch {
                context: format!(
                    "candidate {} is {}x{} against a {}x{} hamiltonian",
                    index,
                    candidate.matrix.rows(),
                    candidate.matrix.cols(),
                    n,
                    n
                ),
            });
        }
        let (passes, slot): (bool, &mut Option<Survivor>) = match candidate.role {
            OperatorRole::TimeReversal => (holds(h, candidate, RelationKind::Real)?, &mut trs),
            OperatorRole::ParticleHole => (holds(h, candidate, RelationKind::ChiralOdd)?, &mut phs),
            OperatorRole::Chiral => (chiral_holds(h, &candidate.matrix), &mut chi),
            other => {
                return Err(SymmetryError::InconsistentSymmetries {
                    conflict: format!(
                        "candidate {} has role {:?}, which is not a physical symmetry",
                        index, other
                    ),
                })
            }
        };
        if !passes {
            rejected.push(index);
            continue;
        }
        if let Some(existing) = slot {
            return Err(SymmetryError::InconsistentSymmetries {
                conflict: format!(
                    "candidates {} and {} both act as {} symmetries",
                    describe(existing.index),
                    index,
                    candidate.role.name()
                ),
            });
        }
        *slot = Some(Survivor {
            index: Some(index),
            operator: candidate.clone(),
        });
    }

    // Pairwise compatibility of the surviving set.
    let survivors: Vec<&Survivor> = [trs.as_ref(), phs.as_ref(), chi.as_ref()]
        .into_iter()
        .flatten()
        .collect();
    let pair_tol = RELATION_TOL * (n as f64).sqrt();
    let mut anticommuting_pair = false;
    for (k, a) in survivors.iter().enumerate() {
        for b in survivors.iter().skip(k + 1) {
            let ab = &a.operator.matrix * &b.operator.matrix;
            let ba = &b.operator.matrix * &a.operator.matrix;
            let commute = ab.dist(&ba);
            let anticommute = (&ab + &ba).norm();
            if commute <= pair_tol {
                continue;
            }
            if anticommute <= pair_tol {
                // Only flag the antiunitary pair; the sign conventions of a
                // chiral product are handled below.
                if a.operator.role != OperatorRole::Chiral
                    && b.operator.role != OperatorRole::Chiral
                {
                    anticommuting_pair = true;
                }
                continue;
            }
            return Err(SymmetryError::IncompatibleOperatorPair {
                first: a.index.expect("pair checks run on declared candidates"),
                second: b.index.expect("pair checks run on declared candidates"),
                commute,
                anticommute,
            });
        }
    }

    // A declared chiral operator must agree with the product of a surviving
    // antiunitary pair up to sign; a missing partner is derived from it.
    if let Some(c) = &chi {
        match (&trs, &phs) {
            (Some(t), Some(p)) => {
                let product = &t.operator.matrix * &p.operator.matrix;
                let direct = c.operator.matrix.dist(&product);
                let flipped = c.operator.matrix.dist(&product.scale_re(-1.0));
                if direct.min(flipped) > pair_tol {
                    return Err(SymmetryError::InconsistentSymmetries {
                        conflict: format!(
                            "chiral candidate {} is not the product of candidates {} and {} up to sign",
                            describe(c.index),
                            describe(t.index),
                            describe(p.index)
                        ),
                    });
                }
            }
            (Some(t), None) => {
                phs = Some(derive_partner(h, t, c, OperatorRole::ParticleHole)?);
            }
            (None, Some(p)) => {
                trs = Some(derive_partner(h, p, c, OperatorRole::TimeReversal)?);
            }
            (None, None) => {}
        }
    }

    let trs_sign = trs.as_ref().map(|t| t.operator.parity);
    let phs_sign = phs.as_ref().map(|p| p.operator.parity);
    let has_chiral = chi.is_some() || (trs.is_some() && phs.is_some());
    let class = SymmetryClass::from_signs(
        sign_tag(trs_sign),
        sign_tag(phs_sign),
        has_chiral,
    );

    // Distribute the survivors over the roles S and S-hat.
    let mut s = None;
    let mut s_hat = None;
    if let crate::class::ClassIndex::Real(j) = class.j {
        let roles = role_assignment(j as usize);
        s = pick(&trs, &phs, roles.primary.0);
        if let Some((kind, _)) = roles.secondary {
            s_hat = pick(&trs, &phs, kind);
        }
    }

    // Chiral operator: declared, or the product S * S-hat on chiral rows.
    let chiral = match chi {
        Some(c) => Some(DetectedOperator {
            operator: c.operator,
            index: c.index,
        }),
        None => match (&s, &s_hat) {
            (Some(a), Some(b)) => {
                let product = &a.operator.matrix * &b.operator.matrix;
                let operator = SymmetryOperator::new(product, OperatorRole::Chiral)
                    .map_err(|e| SymmetryError::InconsistentSymmetries {
                        conflict: format!("product of the symmetry pair is not chiral: {}", e),
                    })?;
                Some(DetectedOperator {
                    operator,
                    index: None,
                })
            }
            _ => None,
        },
    };

    Ok(Detection {
        class,
        s,
        s_hat,
        chiral,
        rejected,
        anticommuting_pair,
    })
}

fn sign_tag(sign: Option<i8>) -> crate::class::SignTag {
    match sign {
        Some(1) => crate::class::SignTag::Plus,
        Some(_) => crate::class::SignTag::Minus,
        None => crate::class::SignTag::Absent,
    }
}

fn pick(
    trs: &Option<Survivor>,
    phs: &Option<Survivor>,
    kind: OperatorRole,
) -> Option<DetectedOperator> {
    let source = match kind {
        OperatorRole::TimeReversal => trs,
        OperatorRole::ParticleHole => phs,
        _ => return None,
    };
    source.as_ref().map(|s| DetectedOperator {
        operator: s.operator.clone(),
        index: s.index,
    })
}

/// Build the missing antiunitary partner as the product of a surviving one
/// with the chiral operator, and verify it on H.
fn derive_partner(
    h: &ComplexMatrix,
    present: &Survivor,
    chiral: &Survivor,
    role: OperatorRole,
) -> Result<Survivor, SymmetryError> {
    let product = &present.operator.matrix * &chiral.operator.matrix;
    let operator =
        SymmetryOperator::new(product, role).map_err(|e| SymmetryError::InconsistentSymmetries {
            conflict: format!(
                "product of candidates {} and {} is not a symmetry operator: {}",
                describe(present.index),
                describe(chiral.index),
                e
            ),
        })?;
    let kind = match role {
        OperatorRole::TimeReversal => RelationKind::Real,
        _ => RelationKind::ChiralOdd,
    };
    if !holds(h, &operator, kind)? {
        return Err(SymmetryError::InconsistentSymmetries {
            conflict: format!(
                "candidates {} and {} survive but their product fails the implied {} relation",
                describe(present.index),
                describe(chiral.index),
                operator.role.name()
            ),
        });
    }
    Ok(Survivor {
        index: None,
        operator,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::{CazLabel, ClassIndex};
    use linalg_core::{c64, sigma1, sigma3};

    /// 4x4 truncation of the p-wave chain at chemical potential mu.
    fn pwave_chain(mu: f64) -> ComplexMatrix {
        let l = 4;
        let mut h = ComplexMatrix::zeros(2 * l, 2 * l);
        // Basis ordering: site index fast, particle/hole slow.
        for x in 0..l {
            h[(x, x)] = c64(mu, 0.0);
            h[(l + x, l + x)] = c64(-mu, 0.0);
        }
        for x in 0..l - 1 {
            // hopping (V + V*)/2 on the diagonal blocks
            h[(x, x + 1)] = c64(0.5, 0.0);
            h[(x + 1, x)] = c64(0.5, 0.0);
            h[(l + x, l + x + 1)] = c64(-0.5, 0.0);
            h[(l + x + 1, l + x)] = c64(-0.5, 0.0);
            // pairing i(V - V*)/2 on both off-diagonal blocks
            h[(x, l + x + 1)] = c64(0.0, 0.5);
            h[(x + 1, l + x)] = c64(0.0, -0.5);
            h[(l + x, x + 1)] = c64(0.0, 0.5);
            h[(l + x + 1, x)] = c64(0.0, -0.5);
        }
        h
    }

    fn block(op: ComplexMatrix, l: usize, role: OperatorRole) -> SymmetryOperator {
        SymmetryOperator::new(op.kron(&ComplexMatrix::identity(l)), role).unwrap()
    }

    #[test]
    fn pwave_candidates_give_the_first_chiral_row() {
        let h = pwave_chain(0.5);
        let cands = vec![
            block(sigma1(), 4, OperatorRole::ParticleHole),
            block(sigma3(), 4, OperatorRole::TimeReversal),
        ];
        let det = detect_class(&h, &cands).unwrap();
        assert_eq!(det.class.caz, CazLabel::BDI);
        assert_eq!(det.class.j, ClassIndex::Real(1));
        // Primary role is the even time reversal, candidate 1.
        assert_eq!(det.s.as_ref().unwrap().index, Some(1));
        assert_eq!(det.s_hat.as_ref().unwrap().index, Some(0));
        assert!(det.anticommuting_pair);
        assert!(det.rejected.is_empty());
        let chiral = det.chiral.unwrap();
        assert_eq!(chiral.index, None);
    }

    #[test]
    fn breaking_time_reversal_leaves_the_particle_hole_row() {
        let mut h = pwave_chain(0.5);
        // An on-site imaginary hop breaks S* conj(H) S = H for sigma_3 but
        // keeps the particle-hole relation for sigma_1.
        let l = 4;
        for x in 0..l - 1 {
            h[(x, x + 1)] += c64(0.0, 0.2);
            h[(x + 1, x)] += c64(0.0, -0.2);
            h[(l + x, l + x + 1)] += c64(0.0, 0.2);
            h[(l + x + 1, l + x)] += c64(0.0, -0.2);
        }
        let cands = vec![
            block(sigma1(), l, OperatorRole::ParticleHole),
            block(sigma3(), l, OperatorRole::TimeReversal),
        ];
        let det = detect_class(&h, &cands).unwrap();
        assert_eq!(det.class.caz, CazLabel::D);
        assert_eq!(det.class.j, ClassIndex::Real(2));
        assert_eq!(det.rejected, vec![1]);
        assert_eq!(det.s.as_ref().unwrap().index, Some(0));
        assert!(det.s_hat.is_none());
    }

    #[test]
    fn no_surviving_candidate_is_the_plain_complex_class() {
        let h = ComplexMatrix::from_rows(&[
            &[c64(0.3, 0.0), c64(0.1, 0.4)],
            &[c64(0.1, -0.4), c64(-0.2, 0.0)],
        ]);
        let cands = vec![SymmetryOperator::new(sigma1(), OperatorRole::TimeReversal).unwrap()];
        let det = detect_class(&h, &cands).unwrap();
        assert_eq!(det.class.caz, CazLabel::A);
        assert_eq!(det.rejected, vec![0]);
        assert!(det.s.is_none() && det.s_hat.is_none() && det.chiral.is_none());
    }

    #[test]
    fn lone_chiral_operator_is_aiii() {
        // H = off-diagonal block matrix anticommutes with sigma_3.
        let h = ComplexMatrix::from_rows(&[
            &[c64(0.0, 0.0), c64(0.7, 0.3)],
            &[c64(0.7, -0.3), c64(0.0, 0.0)],
        ]);
        let cands = vec![SymmetryOperator::new(sigma3(), OperatorRole::Chiral).unwrap()];
        let det = detect_class(&h, &cands).unwrap();
        assert_eq!(det.class.caz, CazLabel::AIII);
        assert_eq!(det.chiral.unwrap().index, Some(0));
    }

    #[test]
    fn two_surviving_time_reversals_conflict() {
        let h = ComplexMatrix::identity(2).scale_re(0.5);
        let cands = vec![
            SymmetryOperator::new(ComplexMatrix::identity(2), OperatorRole::TimeReversal).unwrap(),
            SymmetryOperator::new(sigma1(), OperatorRole::TimeReversal).unwrap(),
        ];
        let err = detect_class(&h, &cands).unwrap_err();
        assert!(matches!(err, SymmetryError::InconsistentSymmetries { .. }));
    }

    #[test]
    fn chiral_plus_time_reversal_derives_the_particle_hole_partner() {
        let h = pwave_chain(0.3);
        let l = 4;
        // sigma_3 sigma_1 = i sigma_2 up to sign; declare the chiral product
        // and time reversal, leaving particle-hole implied.
        let r = &sigma3() * &sigma1();
        let cands = vec![
            block(sigma3(), l, OperatorRole::TimeReversal),
            block(r, l, OperatorRole::Chiral),
        ];
        let det = detect_class(&h, &cands).unwrap();
        assert_eq!(det.class.caz, CazLabel::BDI);
        let shat = det.s_hat.unwrap();
        assert_eq!(shat.index, None);
        assert_eq!(shat.operator.parity, 1);
    }
}
