//! Index extraction from kernel counts across a truncation family.
//!
//! The assembled operator of a half-infinite pairing has an exact kernel and
//! cokernel; on a finite truncation both reappear as near-zero singular
//! values whose vectors localize at an edge. Vectors on the physical edge
//! (left half by convention) represent Ker T, vectors on the artificial cut
//! (right half) represent Ker T*. The integer index is their difference, the
//! parity index the left count mod 2.

use symmetry::{IndexGroup, IndexTypeDescriptor};

use crate::error::PairingError;
use crate::kernel::{kernel_count, KernelConfig, KernelFamily};
use crate::problem::PairingProblem;

/// Value of an extracted invariant.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IndexValue {
    /// Integer-valued index (plain or even-integer positions).
    Integer(i64),
    /// Parity-valued index, 0 or 1.
    Parity(u8),
    /// Position where the index vanishes identically; reported after
    /// checking that kernel and cokernel counts agree.
    ForcedZero,
}

/// Extracted invariant with the kernel diagnostics that produced it.
#[derive(Clone, Debug)]
pub struct IndexResult {
    pub descriptor: IndexTypeDescriptor,
    pub value: IndexValue,
    pub diagnostics: KernelFamily,
}

fn counted_family(
    problem: &PairingProblem,
    cfg: &KernelConfig,
) -> Result<KernelFamily, PairingError> {
    let assembled = problem.assemble_all()?;
    let family: Vec<_> = assembled.into_iter().map(|a| (a.t, a.layout)).collect();
    kernel_count(&family, cfg)
}

fn require_clean_family(family: &KernelFamily) -> Result<(), PairingError> {
    if !family.stable {
        return Err(PairingError::UnstableFamily {
            context: "kernel counts change across truncation sizes".to_string(),
        });
    }
    for level in &family.levels {
        if level.split.bulk != 0 {
            return Err(PairingError::UnstableFamily {
                context: format!(
                    "{} near-kernel vectors at {} sites localize at neither edge",
                    level.split.bulk, level.sites
                ),
            });
        }
    }
    Ok(())
}

/// Integer index of a pairing whose descriptor admits one.
///
/// Positions carrying a parity refuse this call; use [`index2`]. Trivial
/// positions report [`IndexValue::ForcedZero`] after verifying that the edge
/// counts actually cancel.
pub fn index(problem: &PairingProblem, cfg: &KernelConfig) -> Result<IndexResult, PairingError> {
    let descriptor = problem.descriptor();
    let family = counted_family(problem, cfg)?;
    require_clean_family(&family)?;
    let split = family.split();
    let value = split.left as i64 - split.right as i64;
    let value = match descriptor.group {
        IndexGroup::Integers => IndexValue::Integer(value),
        IndexGroup::EvenIntegers => {
            if value % 2 != 0 {
                return Err(PairingError::ParityViolation { value });
            }
            IndexValue::Integer(value)
        }
        IndexGroup::Trivial => {
            if value != 0 {
                return Err(PairingError::UnstableFamily {
                    context: format!(
                        "position is index-free but edge counts differ by {value}"
                    ),
                });
            }
            IndexValue::ForcedZero
        }
        IndexGroup::Parity => {
            return Err(PairingError::DescriptorMismatch {
                context: format!(
                    "position (j={}, d={}) carries a parity, not an integer",
                    problem.j, problem.d
                ),
            });
        }
    };
    Ok(IndexResult {
        descriptor,
        value,
        diagnostics: family,
    })
}

/// Parity index of a pairing whose descriptor admits one.
pub fn index2(problem: &PairingProblem, cfg: &KernelConfig) -> Result<IndexResult, PairingError> {
    let descriptor = problem.descriptor();
    let family = counted_family(problem, cfg)?;
    require_clean_family(&family)?;
    let split = family.split();
    let value = match descriptor.group {
        IndexGroup::Parity => IndexValue::Parity((split.left % 2) as u8),
        IndexGroup::Trivial => {
            if split.left % 2 != 0 {
                return Err(PairingError::UnstableFamily {
                    context: format!(
                        "position is parity-free but {} kernel vectors sit at the physical edge",
                        split.left
                    ),
                });
            }
            IndexValue::ForcedZero
        }
        IndexGroup::Integers | IndexGroup::EvenIntegers => {
            return Err(PairingError::DescriptorMismatch {
                context: format!(
                    "position (j={}, d={}) carries an integer, not a parity",
                    problem.j, problem.d
                ),
            });
        }
    };
    Ok(IndexResult {
        descriptor,
        value,
        diagnostics: family,
    })
}
