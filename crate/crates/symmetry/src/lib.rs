//! Symmetry classification for gapped lattice Hamiltonians.
//!
//! The crate answers four questions about a finite Hamiltonian matrix with
//! declared real symmetry operators:
//!
//! * which of the ten symmetry classes it belongs to ([`detect_class`]),
//!   together with the assignment of the operators to the roles S and S-hat
//!   that the index pairings consume;
//! * what group the strong invariant takes values in at a given spatial
//!   dimension, for each of the four pairing families ([`index_type`] and
//!   the static tables in [`tables`]);
//! * how to span a half-rank projection flipped onto its complement by an
//!   antiunitary symmetry ([`lagrangian_frame`]);
//! * how to reduce a flattened projection to the off-diagonal unitary in a
//!   chiral grading, including the Cayley fixup for gradings squaring to -1
//!   and the relation the second symmetry imposes on the reduced block
//!   ([`chiral_reduce`], [`inherited_relation`]).
//!
//! All tolerances are relative at 1e-9 unless a tighter contract is stated
//! on the item.

pub mod chiral;
pub mod class;
pub mod detect;
pub mod error;
pub mod frame;
pub mod relation;
pub mod tables;

pub use chiral::{
    check_inherited_form, chiral_basis, chiral_reduce, inherited_relation, reduce_in_basis,
    ChiralReduction, InheritedRelation,
};
pub use class::{CazLabel, ClassIndex, SignTag, SymmetryClass};
pub use detect::{detect_class, DetectedOperator, Detection};
pub use error::SymmetryError;
pub use frame::{lagrangian_frame, LagrangianFrame, FRAME_TOL};
pub use relation::{
    check_descriptor, check_relation, conjugated, RelationCheck, RelationKind, RELATION_TOL,
};
pub use tables::{
    index_type, role_assignment, role_for_signs, ConjKind, ConjugatorTag, DiracProjectionRelations,
    Flavor, IndexEntry, IndexGroup, IndexTypeDescriptor, InheritedForm, PairingTable,
    ProjectionRowRelations, RelationTarget, RoleAssignment, SymmetryRelation,
    DIRAC_PROJECTION_RELATIONS, DIRAC_REDUCED_FORMS, PERIODIC, PROJECTION_COLUMN_RELATIONS,
    PROJECTION_PROJECTION, PROJECTION_REDUCED_FORMS, PROJECTION_ROW_RELATIONS, PROJECTION_UNITARY,
    ROLE_ASSIGNMENTS, UNITARY_COLUMN_RELATIONS, UNITARY_ROW_RELATIONS, UNITARY_UNITARY,
};
