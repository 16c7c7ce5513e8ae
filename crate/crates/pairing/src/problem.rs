//! Index pairing problems: validated operand pairs over truncation families.
//!
//! A pairing couples a state-side operand (a projection P, or the unitary U
//! derived from it) against an observable-side operand (a flat-band unitary F
//! or a position projection E). The row index j fixes the antiunitary
//! relations of the state side, the column index d those of the observable
//! side, and the parities of (j, d) select which of the four assembled
//! operators carries the invariant:
//!
//! ```text
//! even j, even d:   T = P F P + 1 - P
//! even j, odd  d:   T = P (1 - 2E) P + 1 - P
//! odd  j, even d:   T = p diag(F, F) p + 1 - p,  p = 1/2 [[1, U], [U*, 1]]
//! odd  j, odd  d:   T = E U E + 1 - E
//! ```

use clifford::SymmetryOperator;
use linalg_core::ComplexMatrix;
use symmetry::{
    check_descriptor, index_type, IndexTypeDescriptor, PairingTable, SymmetryRelation,
    PROJECTION_COLUMN_RELATIONS, PROJECTION_ROW_RELATIONS, RELATION_TOL,
    UNITARY_COLUMN_RELATIONS, UNITARY_ROW_RELATIONS,
};

use crate::error::PairingError;
use crate::kernel::SiteLayout;

/// Which operand types are being paired.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PairingKind {
    /// P against F (even j, even d), U against E (odd j, odd d), or a
    /// two-relation projection against F (odd j, even d).
    ProjectionUnitary,
    /// P against E; defined for even j, odd d.
    ProjectionProjection,
    /// U against F; defined for odd j, even d.
    UnitaryUnitary,
}

/// How strictly a problem is validated at construction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ValidationPolicy {
    /// Operand relations, operator squares and cross commutators.
    Full,
    /// Operand relations and squares only. Symmetry-respecting homotopies in
    /// an enlarged space keep every displayed relation but cannot keep the
    /// added fiber's cross commutators; their problems validate under this
    /// policy.
    RelationsOnly,
}

/// One truncation level: operands and symmetry operators on a finite space.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub layout: SiteLayout,
    /// State-side operand: projection P (even j or two-relation rows) or
    /// unitary U (odd j paired with even or odd d under the matching kind).
    pub left: ComplexMatrix,
    /// Observable-side operand: unitary F (even d) or projection E (odd d).
    pub right: ComplexMatrix,
    /// Primary state-side symmetry S.
    pub s: Option<SymmetryOperator>,
    /// Secondary state-side symmetry, present on the two-relation rows.
    pub s_hat: Option<SymmetryOperator>,
    /// Observable-side symmetry.
    pub sigma: Option<SymmetryOperator>,
}

/// A validated pairing over a family of truncation sizes.
#[derive(Clone, Debug)]
pub struct PairingProblem {
    pub kind: PairingKind,
    pub j: usize,
    pub d: usize,
    pub truncations: Vec<Truncation>,
    policy: ValidationPolicy,
}

/// Assembled operator together with the layout of the space it acts on.
#[derive(Clone, Debug)]
pub struct Assembled {
    pub t: ComplexMatrix,
    pub layout: SiteLayout,
}

/// Shape tolerance for projection operands (they are exact spectral
/// projections in every construction here, unlike compressed unitaries).
const SHAPE_TOL: f64 = 1e-8;

fn require_projection(m: &ComplexMatrix, what: &str) -> Result<(), PairingError> {
    let residual = m.projection_residual();
    let scale = (m.rows() as f64).sqrt().max(1.0);
    if residual > SHAPE_TOL * scale {
        return Err(PairingError::OperandRelation {
            context: format!("{what} is not a projection"),
            residual,
        });
    }
    Ok(())
}

fn check_square(op: &SymmetryOperator, rel: &SymmetryRelation, name: &'static str) -> Result<(), PairingError> {
    if op.parity != rel.square {
        return Err(PairingError::OperandRelation {
            context: format!(
                "{name} squares to {} but the relation demands {}",
                op.parity, rel.square
            ),
            residual: f64::INFINITY,
        });
    }
    Ok(())
}

fn check_rel(
    a: &ComplexMatrix,
    op: &SymmetryOperator,
    rel: &SymmetryRelation,
    context: &str,
) -> Result<(), PairingError> {
    let check = check_descriptor(a, &op.matrix, rel)?;
    if !check.holds {
        return Err(PairingError::OperandRelation {
            context: context.to_string(),
            residual: check.residual,
        });
    }
    Ok(())
}

fn commutator_norm(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (&(a * b) - &(b * a)).norm()
}

fn check_commutes(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    context: &str,
) -> Result<(), PairingError> {
    let residual = commutator_norm(a, b);
    let scale = a.norm().max(1.0);
    if residual > RELATION_TOL * scale {
        return Err(PairingError::OperandRelation {
            context: format!("commutator [{context}] does not vanish"),
            residual,
        });
    }
    Ok(())
}

fn required<'a>(
    op: &'a Option<SymmetryOperator>,
    name: &'static str,
    j: usize,
    d: usize,
) -> Result<&'a SymmetryOperator, PairingError> {
    op.as_ref()
        .ok_or(PairingError::MissingOperator { name, j, d })
}

impl PairingProblem {
    /// Validate operands against the relations of row j and column d and the
    /// commutation requirements between the two sides.
    pub fn new(
        kind: PairingKind,
        j: usize,
        d: usize,
        truncations: Vec<Truncation>,
    ) -> Result<Self, PairingError> {
        Self::with_policy(kind, j, d, truncations, ValidationPolicy::Full)
    }

    /// Like `new` but with an explicit validation policy.
    pub fn with_policy(
        kind: PairingKind,
        j: usize,
        d: usize,
        truncations: Vec<Truncation>,
        policy: ValidationPolicy,
    ) -> Result<Self, PairingError> {
        let j = j % 8;
        if !(1..=8).contains(&d) {
            return Err(PairingError::UnsupportedPosition {
                context: format!("column d={d} outside 1..=8"),
            });
        }
        let (j_even, d_even) = (j % 2 == 0, d % 2 == 0);
        let ok = match kind {
            PairingKind::ProjectionUnitary => j_even == d_even || (!j_even && d_even),
            PairingKind::ProjectionProjection => j_even && !d_even,
            PairingKind::UnitaryUnitary => !j_even && d_even,
        };
        if !ok {
            return Err(PairingError::UnsupportedPosition {
                context: format!("kind {kind:?} has no entry at j={j}, d={d}"),
            });
        }
        if truncations.is_empty() {
            return Err(PairingError::FamilyTooSmall { need: 1, got: 0 });
        }
        let problem = PairingProblem {
            kind,
            j,
            d,
            truncations,
            policy,
        };
        problem.validate()?;
        Ok(problem)
    }

    /// Invariant type carried at this position.
    pub fn descriptor(&self) -> IndexTypeDescriptor {
        index_type(self.j, self.d, self.table())
    }

    /// The table this problem's (kind, parities) combination addresses.
    pub fn table(&self) -> PairingTable {
        match self.kind {
            PairingKind::ProjectionProjection => PairingTable::ProjectionProjection,
            PairingKind::UnitaryUnitary => PairingTable::UnitaryUnitary,
            PairingKind::ProjectionUnitary => {
                if self.j % 2 == 1 && self.d % 2 == 1 {
                    PairingTable::Periodic
                } else {
                    PairingTable::ProjectionUnitary
                }
            }
        }
    }

    /// True when the state side carries a projection (as opposed to U).
    fn left_is_projection(&self) -> bool {
        match self.kind {
            PairingKind::ProjectionProjection => true,
            PairingKind::UnitaryUnitary => false,
            PairingKind::ProjectionUnitary => !(self.j % 2 == 1 && self.d % 2 == 1),
        }
    }

    fn validate(&self) -> Result<(), PairingError> {
        let (j, d) = (self.j, self.d);
        for (level, tr) in self.truncations.iter().enumerate() {
            let n = tr.layout.dim();
            let ctx = |what: &str| format!("level {level}: {what}");
            if tr.left.rows() != n || !tr.left.is_square() || tr.right.rows() != n
                || !tr.right.is_square()
            {
                return Err(PairingError::DimensionMismatch {
                    context: ctx(&format!(
                        "operands {}x{} and {}x{} against layout dimension {n}",
                        tr.left.rows(),
                        tr.left.cols(),
                        tr.right.rows(),
                        tr.right.cols()
                    )),
                });
            }
            for (op, name) in [(&tr.s, "S"), (&tr.s_hat, "S-hat"), (&tr.sigma, "Sigma")] {
                if let Some(op) = op {
                    if op.matrix.rows() != n {
                        return Err(PairingError::DimensionMismatch {
                            context: ctx(&format!("symmetry {name} is {}x{}", op.matrix.rows(), op.matrix.cols())),
                        });
                    }
                }
            }

            // State side. Projection rows check the projection shape and one
            // or two antiunitary relations; unitary rows check one relation.
            // Compressed unitaries are deliberately not tested for unitarity:
            // the defect at the cut is the very structure the index sees.
            if self.left_is_projection() {
                require_projection(&tr.left, "state-side operand")?;
                let row = &PROJECTION_ROW_RELATIONS[j];
                let s = required(&tr.s, "S", j, d)?;
                check_square(s, &row.primary, "S")?;
                check_rel(&tr.left, s, &row.primary, &ctx("row relation via S"))?;
                if let Some(secondary) = &row.secondary {
                    let s_hat = required(&tr.s_hat, "S-hat", j, d)?;
                    check_square(s_hat, secondary, "S-hat")?;
                    check_rel(&tr.left, s_hat, secondary, &ctx("row relation via S-hat"))?;
                }
            } else {
                let rel = &UNITARY_ROW_RELATIONS[(j - 1) / 2];
                let s = required(&tr.s, "S", j, d)?;
                check_square(s, rel, "S")?;
                check_rel(&tr.left, s, rel, &ctx("row relation via S"))?;
            }

            // Observable side.
            let sigma = required(&tr.sigma, "Sigma", j, d)?;
            if d % 2 == 0 {
                let rel = &UNITARY_COLUMN_RELATIONS[d / 2 - 1];
                check_square(sigma, rel, "Sigma")?;
                check_rel(&tr.right, sigma, rel, &ctx("column relation via Sigma"))?;
            } else {
                require_projection(&tr.right, "observable-side operand")?;
                let rel = &PROJECTION_COLUMN_RELATIONS[(d - 1) / 2];
                check_square(sigma, rel, "Sigma")?;
                check_rel(&tr.right, sigma, rel, &ctx("column relation via Sigma"))?;
            }

            // Cross commutators: each symmetry commutes with the opposite
            // operand, and the symmetries commute among themselves.
            if self.policy == ValidationPolicy::Full {
                if let Some(s) = &tr.s {
                    check_commutes(&s.matrix, &tr.right, &ctx("S, observable operand"))?;
                }
                if let Some(s_hat) = &tr.s_hat {
                    check_commutes(&s_hat.matrix, &tr.right, &ctx("S-hat, observable operand"))?;
                }
                if let Some(sigma) = &tr.sigma {
                    check_commutes(&sigma.matrix, &tr.left, &ctx("Sigma, state operand"))?;
                }
                let ops: Vec<&SymmetryOperator> =
                    [&tr.s, &tr.s_hat, &tr.sigma].iter().filter_map(|o| o.as_ref()).collect();
                for a in 0..ops.len() {
                    for b in a + 1..ops.len() {
                        check_commutes(&ops[a].matrix, &ops[b].matrix, &ctx("symmetry pair"))?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Assemble the Fredholm operator of one truncation level.
    pub fn assemble(&self, level: usize) -> Result<Assembled, PairingError> {
        let tr = self
            .truncations
            .get(level)
            .ok_or(PairingError::DimensionMismatch {
                context: format!(
                    "truncation level {level} out of {}",
                    self.truncations.len()
                ),
            })?;
        let n = tr.layout.dim();
        let one = ComplexMatrix::identity(n);
        let (j_even, d_even) = (self.j % 2 == 0, self.d % 2 == 0);
        let assembled = match (j_even, d_even) {
            // T = P F P + 1 - P; also the two-relation rows (odd j, even d)
            // under the projection-unitary kind.
            (true, true) => {
                let p = &tr.left;
                let f = &tr.right;
                let t = &(&(p * f) * p) + &(&one - p);
                Assembled { t, layout: tr.layout }
            }
            (false, true) => {
                if self.kind == PairingKind::ProjectionUnitary {
                    let p = &tr.left;
                    let f = &tr.right;
                    let t = &(&(p * f) * p) + &(&one - p);
                    Assembled { t, layout: tr.layout }
                } else {
                    // Block pairing of two unitaries on the doubled space.
                    let u = &tr.left;
                    let f = &tr.right;
                    let half = 0.5;
                    let mut p = ComplexMatrix::zeros(2 * n, 2 * n);
                    p.set_block(0, 0, &one.scale_re(half));
                    p.set_block(0, n, &u.scale_re(half));
                    p.set_block(n, 0, &u.adjoint().scale_re(half));
                    p.set_block(n, n, &one.scale_re(half));
                    let mut ff = ComplexMatrix::zeros(2 * n, 2 * n);
                    ff.set_block(0, 0, f);
                    ff.set_block(n, n, f);
                    let big_one = ComplexMatrix::identity(2 * n);
                    let t = &(&(&p * &ff) * &p) + &(&big_one - &p);
                    Assembled {
                        t,
                        layout: tr.layout.doubled(),
                    }
                }
            }
            // T = P (1 - 2E) P + 1 - P.
            (true, false) => {
                let p = &tr.left;
                let e = &tr.right;
                let flat = &one - &e.scale_re(2.0);
                let t = &(&(p * &flat) * p) + &(&one - p);
                Assembled { t, layout: tr.layout }
            }
            // T = E U E + 1 - E.
            (false, false) => {
                let u = &tr.left;
                let e = &tr.right;
                let t = &(&(e * u) * e) + &(&one - e);
                Assembled { t, layout: tr.layout }
            }
        };
        Ok(assembled)
    }

    /// Assemble every truncation level, smallest first.
    pub fn assemble_all(&self) -> Result<Vec<Assembled>, PairingError> {
        (0..self.truncations.len())
            .map(|level| self.assemble(level))
            .collect()
    }
}
