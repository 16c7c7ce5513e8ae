use thiserror::Error;

/// Errors produced while validating, assembling or evaluating index pairings.
#[derive(Error, Debug)]
pub enum PairingError {
    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    /// A declared symmetry relation (or operand shape) fails its tolerance.
    #[error("operand relation violated ({context}): residual {residual:.3e}")]
    OperandRelation { context: String, residual: f64 },

    /// The (j, d) position demands a symmetry operator that was not supplied.
    #[error("missing symmetry operator `{name}` for row j={j}, column d={d}")]
    MissingOperator {
        name: &'static str,
        j: usize,
        d: usize,
    },

    /// The requested row/column/kind combination does not name a pairing.
    #[error("no pairing at this position: {context}")]
    UnsupportedPosition { context: String },

    /// Near-zero singular values do not separate cleanly from the rest.
    #[error(
        "indeterminate kernel: no gap ratio >= {min_ratio:.1e} above threshold {tol:.1e}; \
         smallest singular values {tail:?}"
    )]
    IndeterminateKernel {
        tol: f64,
        min_ratio: f64,
        tail: Vec<f64>,
    },

    /// Kernel counts or edge splits disagree across truncation sizes.
    #[error("kernel family unstable across truncation sizes: {context}")]
    UnstableFamily { context: String },

    /// The requested invariant is not the one the symmetry position carries.
    #[error("descriptor mismatch: {context}")]
    DescriptorMismatch { context: String },

    #[error("truncation family too small: need at least {need} levels, got {got}")]
    FamilyTooSmall { need: usize, got: usize },

    /// An even-integer position produced an odd value; the symmetry
    /// validation or the kernel count must be wrong.
    #[error("parity violation: position demands an even index, computed {value}")]
    ParityViolation { value: i64 },

    #[error(transparent)]
    Linalg(#[from] linalg_core::LinalgError),

    #[error(transparent)]
    Symmetry(#[from] symmetry::SymmetryError),

    #[error(transparent)]
    Clifford(#[from] clifford::CliffordError),
}
