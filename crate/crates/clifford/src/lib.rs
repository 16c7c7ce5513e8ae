//! Exact arithmetic for the finite group of signed anticommuting
//! involutions, its unitary matrix representation, the real symmetry
//! operators that decorate it, their normal forms, and the classical Lie
//! algebras and groups those operators cut out.
//!
//! Everything group-level is integer arithmetic on bitmasks; everything
//! matrix-level is built from signed permutation matrices, so the structural
//! identities hold with zero floating-point error and are tested that way.
//! Floating-point tolerances appear only where eigendecompositions or
//! exponentials genuinely enter (normal forms, membership of generic
//! matrices).

pub mod error;
pub mod group;
pub mod lie;
pub mod normal_form;
pub mod ops;
pub mod rep;

pub use error::CliffordError;
pub use group::{
    adjoinability_certificate, adjoining_element, apply_involution, center, conjugate,
    exhaustive_adjoiner_search, group_elements, kappa, omega_element, sigma_element,
    sigma_hat_element, AdjoinabilityCertificate, CliffordElement, GroupInvolution,
    MAX_GENERATORS,
};
pub use lie::{
    algebra_membership, cartan_label, classical_group_name, embed_half_dimension, exp_member,
    group_membership, in_algebra, in_group, omega_hat, project_to_algebra,
    restrict_half_dimension, MembershipReport, MEMBERSHIP_TOL,
};
pub use normal_form::{
    cayley, cayley_extended, clifford_normal_form, hadamard_involution, normal_form, NormalForm,
};
pub use ops::{
    expected_relations, symmetry_ops, OpRelations, OperatorRole, SymmetryOperator, SymmetryOps,
};
pub use rep::{rep_dim, representation, GammaRep, MAX_REP_GENERATORS};
