//! Dense complex linear algebra for finite-volume index computations.
//!
//! This crate is the numerical foundation of the workspace. It provides
//!
//! - [`ComplexMatrix`], a dense row-major matrix over `Complex64` that
//!   carries every operator in the higher-level crates,
//! - [`hermitian_eig`], a deterministic Householder + implicit-QL
//!   eigensolver with a fixed eigenvector phase convention,
//! - [`spectral_projection`] and [`signature`] for gapped Hamiltonians,
//! - [`singular_spectrum`] for kernel-dimension estimation,
//! - [`pfaffian`] via Parlett–Reid skew tridiagonalization with exact sign
//!   bookkeeping, plus a pivoted-LU [`determinant`].
//!
//! All routines are pure functions over immutable values and are safe to
//! call concurrently. Determinism is a contract: bit-identical inputs give
//! bit-identical outputs, which downstream golden tests and the CLI's
//! reproducibility guarantee rely on.

mod eigen;
mod error;
mod matrix;
mod pfaffian;
mod solve;
mod svd;

pub use eigen::{
    hermitian_eig, signature, spectral_projection, SpectralDecomposition, GAP_TOL,
    HERMITICITY_TOL,
};
pub use error::LinalgError;
pub use matrix::{c64, i_sigma2, sigma1, sigma2, sigma3, ComplexMatrix, C64};
pub use pfaffian::{determinant, pfaffian, SKEW_TOL};
pub use solve::{expm, inverse, solve};
pub use svd::{polish_null_vectors, singular_spectrum, SingularSpectrum};
