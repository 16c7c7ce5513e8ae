//! Error type for operator requests that are structurally impossible.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum CliffordError {
    /// The full and odd-index flips have no conjugating operator when the
    /// volume monomial is central, i.e. for every odd d.
    #[error("{role} operator is undefined for odd d = {d}")]
    UndefinedForOddDimension { role: &'static str, d: usize },

    /// A user-supplied matrix failed the symmetry-operator checks (real,
    /// unitary, squares to a sign).
    #[error("not a symmetry operator: {what} (residual {residual:.3e})")]
    NotASymmetryOperator { what: &'static str, residual: f64 },
}
