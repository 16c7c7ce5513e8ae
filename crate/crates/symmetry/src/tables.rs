//! Machine-readable classification tables.
//!
//! Four pairing families are served, each mapping a position (j, d) on the
//! two eightfold cycles to the group the index takes values in, plus a
//! flavor tag for the entries that need a symmetry-adapted index:
//!
//! * projection-unitary: half-space projection against a unitary, even d;
//! * projection-projection: two projections, even j and odd d;
//! * unitary-unitary: two unitaries, odd j and even d;
//! * periodic: the full 8 x 8 table covering every (j, d).
//!
//! Alongside the index data the module serves the defining symmetry
//! relations of each row and column, the assignment of physical symmetries
//! (time reversal, particle-hole) to row positions, and the normal forms
//! inherited by off-diagonal blocks after chiral reduction.

use crate::class::{CazLabel, SymmetryClass};
use clifford::OperatorRole;

/// Group an index invariant takes values in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum IndexGroup {
    Integers,
    EvenIntegers,
    Parity,
    Trivial,
}

impl IndexGroup {
    pub fn label(self) -> &'static str {
        match self {
            IndexGroup::Integers => "Z",
            IndexGroup::EvenIntegers => "2Z",
            IndexGroup::Parity => "Z2",
            IndexGroup::Trivial => "0",
        }
    }
}

/// Flavor tag attached to the constrained entries (even-integer and parity
/// valued indices), recording which antiunitary structure the Fredholm
/// operator inherits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Flavor {
    R,
    Q,
    S,
    O,
}

impl Flavor {
    pub fn label(self) -> &'static str {
        match self {
            Flavor::R => "R",
            Flavor::Q => "Q",
            Flavor::S => "S",
            Flavor::O => "O",
        }
    }
}

/// The four pairing families.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum PairingTable {
    /// Half-space projection paired with a symmetric unitary (even d).
    ProjectionUnitary,
    /// Half-space projection paired with a flattened-Hamiltonian projection
    /// (even j, odd d).
    ProjectionProjection,
    /// Chiral-reduced unitary paired with a unitary (odd j, even d).
    UnitaryUnitary,
    /// Hardy-space pairing defined in every dimension; its even-d part
    /// coincides with the projection-unitary family.
    Periodic,
}

impl PairingTable {
    pub fn label(self) -> &'static str {
        match self {
            PairingTable::ProjectionUnitary => "projection-unitary",
            PairingTable::ProjectionProjection => "projection-projection",
            PairingTable::UnitaryUnitary => "unitary-unitary",
            PairingTable::Periodic => "periodic",
        }
    }
}

/// One cell of a pairing table.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct IndexEntry {
    pub group: IndexGroup,
    pub flavor: Option<Flavor>,
}

/// Index type at position (j, d) in the given family.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct IndexTypeDescriptor {
    pub j: usize,
    pub d: usize,
    pub group: IndexGroup,
    pub flavor: Option<Flavor>,
    pub table: PairingTable,
}

mod data {
    use super::{Flavor, IndexEntry, IndexGroup};
    use Flavor::{O, Q, R, S};

    const fn two(f: Flavor) -> IndexEntry {
        IndexEntry {
            group: IndexGroup::EvenIntegers,
            flavor: Some(f),
        }
    }

    const fn z2(f: Flavor) -> IndexEntry {
        IndexEntry {
            group: IndexGroup::Parity,
            flavor: Some(f),
        }
    }

    const Z: IndexEntry = IndexEntry {
        group: IndexGroup::Integers,
        flavor: None,
    };

    const T: IndexEntry = IndexEntry {
        group: IndexGroup::Trivial,
        flavor: None,
    };

    /// Rows j = 0..7, columns d = 2, 4, 6, 8.
    pub const PROJECTION_UNITARY: [[IndexEntry; 4]; 8] = [
        [T, two(R), z2(R), Z],
        [T, T, T, z2(O)],
        [Z, T, two(O), z2(O)],
        [z2(Q), T, T, T],
        [z2(Q), Z, T, two(Q)],
        [T, z2(S), T, T],
        [two(S), z2(S), Z, T],
        [T, T, z2(R), T],
    ];

    /// Rows j = 0, 2, 4, 6, columns d = 1, 3, 5, 7.
    pub const PROJECTION_PROJECTION: [[IndexEntry; 4]; 4] = [
        [T, T, T, z2(O)],
        [z2(O), T, T, T],
        [T, z2(S), T, T],
        [T, T, z2(S), T],
    ];

    /// Rows j = 1, 3, 5, 7, columns d = 2, 4, 6, 8.
    pub const UNITARY_UNITARY: [[IndexEntry; 4]; 4] = [
        [T, T, T, z2(O)],
        [z2(Q), T, T, T],
        [T, z2(S), T, T],
        [T, T, z2(R), T],
    ];

    /// Rows j = 0..7, columns d = 1..8.
    pub const PERIODIC: [[IndexEntry; 8]; 8] = [
        [T, T, T, two(R), T, z2(R), z2(O), Z],
        [Z, T, T, T, two(Q), T, z2(O), z2(O)],
        [z2(R), Z, T, T, T, two(O), T, z2(O)],
        [z2(R), z2(Q), Z, T, T, T, two(O), T],
        [T, z2(Q), z2(S), Z, T, T, T, two(Q)],
        [two(R), T, z2(S), z2(S), Z, T, T, T],
        [T, two(S), T, z2(S), z2(Q), Z, T, T],
        [T, T, two(S), T, z2(Q), z2(R), Z, T],
    ];
}

pub use data::{PERIODIC, PROJECTION_PROJECTION, PROJECTION_UNITARY, UNITARY_UNITARY};

/// Reduce d to the ring 1..=8 (0 counts as 8).
fn wrap_dim(d: usize) -> usize {
    let r = d % 8;
    if r == 0 {
        8
    } else {
        r
    }
}

/// The index type at position (j mod 8, d mod 8) of the given family.
/// Positions a family does not cover (wrong parity of j or d) are trivial.
pub fn index_type(j: usize, d: usize, table: PairingTable) -> IndexTypeDescriptor {
    let j = j % 8;
    let d = wrap_dim(d);
    let entry = match table {
        PairingTable::ProjectionUnitary => {
            if d % 2 == 0 {
                PROJECTION_UNITARY[j][d / 2 - 1]
            } else {
                IndexEntry {
                    group: IndexGroup::Trivial,
                    flavor: None,
                }
            }
        }
        PairingTable::ProjectionProjection => {
            if j % 2 == 0 && d % 2 == 1 {
                PROJECTION_PROJECTION[j / 2][(d - 1) / 2]
            } else {
                IndexEntry {
                    group: IndexGroup::Trivial,
                    flavor: None,
                }
            }
        }
        PairingTable::UnitaryUnitary => {
            if j % 2 == 1 && d % 2 == 0 {
                UNITARY_UNITARY[(j - 1) / 2][d / 2 - 1]
            } else {
                IndexEntry {
                    group: IndexGroup::Trivial,
                    flavor: None,
                }
            }
        }
        PairingTable::Periodic => PERIODIC[j][d - 1],
    };
    IndexTypeDescriptor {
        j,
        d,
        group: entry.group,
        flavor: entry.flavor,
        table,
    }
}

/// How an antiunitary constraint reads the operator.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConjKind {
    /// S* conj(X) S
    Conjugate,
    /// S* transpose(X) S
    Transpose,
}

/// What the constraint maps the operator to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RelationTarget {
    /// X itself.
    Same,
    /// -X.
    Negative,
    /// 1 - X (projections only).
    Complement,
}

/// One antiunitary constraint: conjugate or transpose the operator, sandwich
/// with a real unitary squaring to `square`, land on `target`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SymmetryRelation {
    pub conj: ConjKind,
    pub target: RelationTarget,
    pub square: i8,
}

const fn rel(conj: ConjKind, target: RelationTarget, square: i8) -> SymmetryRelation {
    SymmetryRelation {
        conj,
        target,
        square,
    }
}

/// Constraints on the half-space projection in row j: the operator S always
/// present, and on odd rows the second operator S-hat.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ProjectionRowRelations {
    pub j: usize,
    pub primary: SymmetryRelation,
    pub secondary: Option<SymmetryRelation>,
}

use ConjKind::{Conjugate, Transpose};
use RelationTarget::{Complement, Same};

/// Row relations of the projection tables, j = 0..7.
pub const PROJECTION_ROW_RELATIONS: [ProjectionRowRelations; 8] = [
    ProjectionRowRelations {
        j: 0,
        primary: rel(Conjugate, Same, 1),
        secondary: None,
    },
    ProjectionRowRelations {
        j: 1,
        primary: rel(Conjugate, Same, 1),
        secondary: Some(rel(Conjugate, Complement, 1)),
    },
    ProjectionRowRelations {
        j: 2,
        primary: rel(Conjugate, Complement, 1),
        secondary: None,
    },
    ProjectionRowRelations {
        j: 3,
        primary: rel(Conjugate, Complement, 1),
        secondary: Some(rel(Conjugate, Same, -1)),
    },
    ProjectionRowRelations {
        j: 4,
        primary: rel(Conjugate, Same, -1),
        secondary: None,
    },
    ProjectionRowRelations {
        j: 5,
        primary: rel(Conjugate, Same, -1),
        secondary: Some(rel(Conjugate, Complement, -1)),
    },
    ProjectionRowRelations {
        j: 6,
        primary: rel(Conjugate, Complement, -1),
        secondary: None,
    },
    ProjectionRowRelations {
        j: 7,
        primary: rel(Conjugate, Complement, -1),
        secondary: Some(rel(Conjugate, Same, 1)),
    },
];

/// Constraint on the unitary in odd row j of the unitary-unitary family,
/// indexed by (j - 1) / 2.
pub const UNITARY_ROW_RELATIONS: [SymmetryRelation; 4] = [
    rel(Conjugate, Same, 1),
    rel(Transpose, Same, -1),
    rel(Conjugate, Same, -1),
    rel(Transpose, Same, 1),
];

/// Constraint on the unitary F in even column d of the projection-unitary
/// family, indexed by d / 2 - 1 for d = 2, 4, 6, 8.
pub const UNITARY_COLUMN_RELATIONS: [SymmetryRelation; 4] = [
    rel(Transpose, Same, 1),
    rel(Conjugate, Same, -1),
    rel(Transpose, Same, -1),
    rel(Conjugate, Same, 1),
];

/// Constraint on the projection E in odd column d of the
/// projection-projection family, indexed by (d - 1) / 2 for d = 1, 3, 5, 7.
pub const PROJECTION_COLUMN_RELATIONS: [SymmetryRelation; 4] = [
    rel(Conjugate, Same, 1),
    rel(Conjugate, Complement, -1),
    rel(Conjugate, Same, -1),
    rel(Conjugate, Complement, 1),
];

/// Antiunitary constraints on the Hardy projection of the Dirac operator in
/// dimension d, indexed by d - 1 for d = 1..8. For even d the projection
/// additionally satisfies the unitary flip relation `omega_flips`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DiracProjectionRelations {
    pub d: usize,
    pub sigma: SymmetryRelation,
    pub sigma_hat: Option<SymmetryRelation>,
    pub omega_flips: bool,
}

pub const DIRAC_PROJECTION_RELATIONS: [DiracProjectionRelations; 8] = [
    DiracProjectionRelations {
        d: 1,
        sigma: rel(Conjugate, Same, 1),
        sigma_hat: None,
        omega_flips: false,
    },
    DiracProjectionRelations {
        d: 2,
        sigma: rel(Conjugate, Complement, -1),
        sigma_hat: Some(rel(Conjugate, Same, 1)),
        omega_flips: true,
    },
    DiracProjectionRelations {
        d: 3,
        sigma: rel(Conjugate, Complement, -1),
        sigma_hat: None,
        omega_flips: false,
    },
    DiracProjectionRelations {
        d: 4,
        sigma: rel(Conjugate, Same, -1),
        sigma_hat: Some(rel(Conjugate, Complement, -1)),
        omega_flips: true,
    },
    DiracProjectionRelations {
        d: 5,
        sigma: rel(Conjugate, Same, -1),
        sigma_hat: None,
        omega_flips: false,
    },
    DiracProjectionRelations {
        d: 6,
        sigma: rel(Conjugate, Complement, 1),
        sigma_hat: Some(rel(Conjugate, Same, -1)),
        omega_flips: true,
    },
    DiracProjectionRelations {
        d: 7,
        sigma: rel(Conjugate, Complement, 1),
        sigma_hat: None,
        omega_flips: false,
    },
    DiracProjectionRelations {
        d: 8,
        sigma: rel(Conjugate, Same, 1),
        sigma_hat: Some(rel(Conjugate, Complement, 1)),
        omega_flips: true,
    },
];

/// Fixed conjugator appearing in an inherited block relation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConjugatorTag {
    One,
    Sigma1,
    Sigma2,
    Sigma3,
}

impl ConjugatorTag {
    pub fn matrix(self, blocks: usize) -> linalg_core::ComplexMatrix {
        use linalg_core::{sigma1, sigma2, sigma3, ComplexMatrix};
        let fiber = match self {
            ConjugatorTag::One => return ComplexMatrix::identity(2 * blocks),
            ConjugatorTag::Sigma1 => sigma1(),
            ConjugatorTag::Sigma2 => sigma2(),
            ConjugatorTag::Sigma3 => sigma3(),
        };
        fiber.kron(&ComplexMatrix::identity(blocks))
    }
}

/// Relation inherited by the off-diagonal block U after chiral reduction:
/// C* conj-or-transpose(U) C = sign * U.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct InheritedForm {
    pub conj: ConjKind,
    pub conjugator: ConjugatorTag,
    pub sign: i8,
}

/// Expected inherited form for the flattened projection of each chiral row,
/// indexed by (j - 1) / 2 for j = 1, 3, 5, 7.
pub const PROJECTION_REDUCED_FORMS: [InheritedForm; 4] = [
    InheritedForm {
        conj: Conjugate,
        conjugator: ConjugatorTag::One,
        sign: 1,
    },
    InheritedForm {
        conj: Transpose,
        conjugator: ConjugatorTag::Sigma2,
        sign: 1,
    },
    InheritedForm {
        conj: Conjugate,
        conjugator: ConjugatorTag::Sigma2,
        sign: 1,
    },
    InheritedForm {
        conj: Transpose,
        conjugator: ConjugatorTag::One,
        sign: 1,
    },
];

/// Expected inherited form for the reduced Dirac projection in even
/// dimension d, indexed by d / 2 - 1 for d = 2, 4, 6, 8.
pub const DIRAC_REDUCED_FORMS: [InheritedForm; 4] = [
    InheritedForm {
        conj: Transpose,
        conjugator: ConjugatorTag::One,
        sign: 1,
    },
    InheritedForm {
        conj: Conjugate,
        conjugator: ConjugatorTag::Sigma2,
        sign: 1,
    },
    InheritedForm {
        conj: Transpose,
        conjugator: ConjugatorTag::One,
        sign: -1,
    },
    InheritedForm {
        conj: Conjugate,
        conjugator: ConjugatorTag::Sigma1,
        sign: 1,
    },
];

/// Assignment of physical symmetries to the cycle position j: which operator
/// plays the primary role S, which (if any) the secondary role S-hat, with
/// the sign of each square and of the square of their product.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RoleAssignment {
    pub j: usize,
    pub caz: CazLabel,
    pub primary: (OperatorRole, i8),
    pub secondary: Option<(OperatorRole, i8)>,
    pub chiral_square: Option<i8>,
}

pub const ROLE_ASSIGNMENTS: [RoleAssignment; 8] = [
    RoleAssignment {
        j: 0,
        caz: CazLabel::AI,
        primary: (OperatorRole::TimeReversal, 1),
        secondary: None,
        chiral_square: None,
    },
    RoleAssignment {
        j: 1,
        caz: CazLabel::BDI,
        primary: (OperatorRole::TimeReversal, 1),
        secondary: Some((OperatorRole::ParticleHole, 1)),
        chiral_square: Some(1),
    },
    RoleAssignment {
        j: 2,
        caz: CazLabel::D,
        primary: (OperatorRole::ParticleHole, 1),
        secondary: None,
        chiral_square: None,
    },
    RoleAssignment {
        j: 3,
        caz: CazLabel::DIII,
        primary: (OperatorRole::ParticleHole, 1),
        secondary: Some((OperatorRole::TimeReversal, -1)),
        chiral_square: Some(-1),
    },
    RoleAssignment {
        j: 4,
        caz: CazLabel::AII,
        primary: (OperatorRole::TimeReversal, -1),
        secondary: None,
        chiral_square: None,
    },
    RoleAssignment {
        j: 5,
        caz: CazLabel::CII,
        primary: (OperatorRole::TimeReversal, -1),
        secondary: Some((OperatorRole::ParticleHole, -1)),
        chiral_square: Some(1),
    },
    RoleAssignment {
        j: 6,
        caz: CazLabel::C,
        primary: (OperatorRole::ParticleHole, -1),
        secondary: None,
        chiral_square: None,
    },
    RoleAssignment {
        j: 7,
        caz: CazLabel::CI,
        primary: (OperatorRole::ParticleHole, -1),
        secondary: Some((OperatorRole::TimeReversal, 1)),
        chiral_square: Some(-1),
    },
];

/// The role assignment for row j mod 8.
pub fn role_assignment(j: usize) -> RoleAssignment {
    ROLE_ASSIGNMENTS[j % 8]
}

/// The role assignment matching a detected pair of signs, if any row does.
pub fn role_for_signs(trs: Option<i8>, phs: Option<i8>) -> Option<RoleAssignment> {
    ROLE_ASSIGNMENTS.iter().copied().find(|row| {
        let class = SymmetryClass::real(row.j);
        class.trs_sign.sign() == trs && class.phs_sign.sign() == phs
    })
}
