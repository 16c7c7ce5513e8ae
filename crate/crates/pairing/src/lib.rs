//! Fredholm pairings of projections and unitaries on truncated lattices.
//!
//! The pipeline: declare a [`problem::PairingProblem`] from validated
//! operands over a family of truncation sizes, assemble the Fredholm
//! operator of each level, count its near-kernel with edge classification
//! ([`kernel`]), and extract the invariant the position carries
//! ([`index`]). Around that core sit the structural verifiers: Kramers-type
//! degeneracy mechanisms ([`kramers`]), index-vanishing certificates
//! ([`vanishing`]), dual-assembly consistency ([`equivalence`]), fiber
//! augmentation parity flips ([`augment`]), and relation-respecting random
//! operand generators ([`sample`]).

pub mod augment;
pub mod equivalence;
pub mod error;
pub mod index;
pub mod kernel;
pub mod kramers;
pub mod problem;
pub mod sample;
pub mod vanishing;

pub use augment::{augment_blocks, augmented_parity, homotopy_augment, AugmentBlocks, FlipReport};
pub use equivalence::{equivalence_check, EquivalencePair, EquivalenceReport};
pub use error::PairingError;
pub use index::{index, index2, IndexResult, IndexValue};
pub use kernel::{
    count_near_kernel, kernel_count, EdgeSplit, KernelConfig, KernelFamily, LevelDiagnostics,
    SiteLayout,
};
pub use kramers::{kramers_verify, EigenCluster, KramersContext, MultiplicityReport, CLUSTER_TOL};
pub use problem::{Assembled, PairingKind, PairingProblem, Truncation, ValidationPolicy};
pub use sample::{
    gaussian_hermitian, gaussian_matrix, plant_odd_symmetric_kernel, polar_unitary,
    sample_odd_symmetric, sample_quaternionic, sample_related_projection,
    sample_related_unitary, sample_unitary,
};
pub use vanishing::{vanishing_check, VanishingCase, VanishingReport};
