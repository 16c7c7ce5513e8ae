//! Near-kernel counting on families of truncated operators.
//!
//! A finite truncation of a Fredholm pairing is a square matrix, so the raw
//! difference dim ker T - dim ker T* is always zero. What survives truncation
//! is the location of the near-zero singular vectors: modes of the infinite
//! operator's kernel sit at the retained wall, while the cut itself
//! manufactures partner modes at the opposite edge. Counting and classifying
//! the near-kernel on two or more sizes therefore recovers the index data.

use linalg_core::{singular_spectrum, ComplexMatrix};

use crate::error::PairingError;

/// Index convention of a truncated operator: `outer` slow blocks (doubled
/// spaces), `sites` lattice positions, `inner` fiber components per site.
/// The flat index is `(block * sites + site) * inner + component`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SiteLayout {
    pub outer: usize,
    pub sites: usize,
    pub inner: usize,
}

impl SiteLayout {
    /// Scalar wave functions over `sites` positions.
    pub fn flat(sites: usize) -> Self {
        SiteLayout {
            outer: 1,
            sites,
            inner: 1,
        }
    }

    /// One lattice with an `inner`-dimensional fiber.
    pub fn with_fiber(sites: usize, inner: usize) -> Self {
        SiteLayout {
            outer: 1,
            sites,
            inner,
        }
    }

    pub fn dim(&self) -> usize {
        self.outer * self.sites * self.inner
    }

    /// Lattice position addressed by a flat index.
    pub fn site_of(&self, index: usize) -> usize {
        (index / self.inner) % self.sites
    }

    /// Layout of the same lattice after stacking two copies of the space.
    pub fn doubled(&self) -> Self {
        SiteLayout {
            outer: 2 * self.outer,
            sites: self.sites,
            inner: self.inner,
        }
    }
}

/// Thresholds for accepting a near-kernel count.
#[derive(Clone, Copy, Debug)]
pub struct KernelConfig {
    /// Singular values below this count as near-zero.
    pub kernel_tol: f64,
    /// Smallest kept singular value must exceed the largest dropped one by
    /// this factor, otherwise the count is rejected as indeterminate.
    pub min_gap_ratio: f64,
    /// Fraction of a vector's weight one lattice half must hold before the
    /// vector is attributed to that edge.
    pub edge_weight: f64,
}

impl Default for KernelConfig {
    fn default() -> Self {
        KernelConfig {
            kernel_tol: 1e-6,
            min_gap_ratio: 1e3,
            edge_weight: 0.8,
        }
    }
}

/// Where the near-kernel vectors live.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct EdgeSplit {
    pub left: usize,
    pub right: usize,
    pub bulk: usize,
}

/// Near-kernel data of one truncation size.
#[derive(Clone, Debug)]
pub struct LevelDiagnostics {
    /// Lattice sites of this level, the family's size label.
    pub sites: usize,
    /// Number of singular values below the kernel threshold.
    pub count: usize,
    pub split: EdgeSplit,
    /// Largest singular value that was counted as near-zero (0 when none).
    pub largest_dropped: f64,
    /// Smallest singular value above the threshold.
    pub smallest_kept: f64,
    /// `smallest_kept / largest_dropped`; infinite for empty kernels.
    pub gap_ratio: f64,
    /// The few smallest singular values, ascending, for inspection.
    pub tail: Vec<f64>,
}

/// Diagnostics for a whole truncation family.
#[derive(Clone, Debug)]
pub struct KernelFamily {
    pub levels: Vec<LevelDiagnostics>,
    /// Counts and edge splits agree across all levels.
    pub stable: bool,
}

impl KernelFamily {
    /// The agreed edge split; only meaningful when `stable`.
    pub fn split(&self) -> EdgeSplit {
        self.levels.first().map(|l| l.split).unwrap_or_default()
    }

    pub fn count(&self) -> usize {
        self.levels.first().map(|l| l.count).unwrap_or(0)
    }
}

fn classify(v: &[linalg_core::C64], layout: &SiteLayout, edge_weight: f64) -> Option<bool> {
    let mid = layout.sites / 2;
    let mut left = 0.0;
    let mut total = 0.0;
    for (idx, z) in v.iter().enumerate() {
        let w = z.norm_sqr();
        total += w;
        if layout.site_of(idx) < mid {
            left += w;
        }
    }
    if total == 0.0 {
        return None;
    }
    let frac = left / total;
    if frac >= edge_weight {
        Some(true)
    } else if frac <= 1.0 - edge_weight {
        Some(false)
    } else {
        None
    }
}

/// Count and classify the near-zero singular values of one truncated
/// operator. Rejects counts whose spectral gap is not clean.
pub fn count_near_kernel(
    t: &ComplexMatrix,
    layout: &SiteLayout,
    cfg: &KernelConfig,
) -> Result<LevelDiagnostics, PairingError> {
    if t.rows() != layout.dim() || !t.is_square() {
        return Err(PairingError::DimensionMismatch {
            context: format!(
                "operator is {}x{} but layout describes dimension {}",
                t.rows(),
                t.cols(),
                layout.dim()
            ),
        });
    }
    let spectrum = singular_spectrum(t)?;
    let n = spectrum.values.len();
    let count = spectrum.count_below(cfg.kernel_tol);
    // `values` is descending, so the `count` smallest are the last entries.
    let largest_dropped = if count > 0 { spectrum.values[n - count] } else { 0.0 };
    let smallest_kept = if count < n {
        spectrum.values[n - count - 1]
    } else {
        f64::INFINITY
    };
    let gap_ratio = if count == 0 {
        f64::INFINITY
    } else if largest_dropped == 0.0 {
        f64::INFINITY
    } else {
        smallest_kept / largest_dropped
    };
    let tail: Vec<f64> = spectrum.values.iter().rev().take(8).copied().collect();
    if count > 0 && gap_ratio < cfg.min_gap_ratio {
        return Err(PairingError::IndeterminateKernel {
            tol: cfg.kernel_tol,
            min_ratio: cfg.min_gap_ratio,
            tail,
        });
    }

    let mut split = EdgeSplit::default();
    for k in 0..count {
        // Descending order: near-zero vectors are the trailing columns.
        let v = spectrum.right_vectors.col(n - 1 - k);
        match classify(&v, layout, cfg.edge_weight) {
            Some(true) => split.left += 1,
            Some(false) => split.right += 1,
            None => split.bulk += 1,
        }
    }

    Ok(LevelDiagnostics {
        sites: layout.sites,
        count,
        split,
        largest_dropped,
        smallest_kept,
        gap_ratio,
        tail,
    })
}

/// Near-kernel counts across a family of truncation sizes. At least two
/// levels are required; the family is stable when every level agrees on the
/// count and on the edge split.
pub fn kernel_count(
    family: &[(ComplexMatrix, SiteLayout)],
    cfg: &KernelConfig,
) -> Result<KernelFamily, PairingError> {
    if family.len() < 2 {
        return Err(PairingError::FamilyTooSmall {
            need: 2,
            got: family.len(),
        });
    }
    let mut levels = Vec::with_capacity(family.len());
    for (t, layout) in family {
        levels.push(count_near_kernel(t, layout, cfg)?);
    }
    let first = &levels[0];
    let stable = levels
        .iter()
        .all(|l| l.count == first.count && l.split == first.split);
    Ok(KernelFamily { levels, stable })
}

#[cfg(test)]
mod tests {
    use super::*;
    use linalg_core::c64;

    /// Left shift compressed to [0, L): V e_k = e_{k-1}, V e_0 = 0.
    fn shift_box(l: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(l, l, |i, j| {
            if j == i + 1 {
                c64(1.0, 0.0)
            } else {
                c64(0.0, 0.0)
            }
        })
    }

    #[test]
    fn identity_has_empty_kernel() {
        let layout = SiteLayout::flat(6);
        let diag = count_near_kernel(
            &ComplexMatrix::identity(6),
            &layout,
            &KernelConfig::default(),
        )
        .unwrap();
        assert_eq!(diag.count, 0);
        assert!(diag.gap_ratio.is_infinite());
    }

    #[test]
    fn compressed_shift_has_one_left_mode() {
        let layout = SiteLayout::flat(12);
        let diag =
            count_near_kernel(&shift_box(12), &layout, &KernelConfig::default()).unwrap();
        assert_eq!(diag.count, 1);
        assert_eq!(diag.split, EdgeSplit { left: 1, right: 0, bulk: 0 });
    }

    #[test]
    fn adjoint_shift_mode_sits_right() {
        let layout = SiteLayout::flat(12);
        let diag = count_near_kernel(
            &shift_box(12).adjoint(),
            &layout,
            &KernelConfig::default(),
        )
        .unwrap();
        assert_eq!(diag.split, EdgeSplit { left: 0, right: 1, bulk: 0 });
    }

    #[test]
    fn smeared_spectrum_is_rejected() {
        // Singular values 1e-7 .. sprinkled through the threshold decade with
        // no clean break.
        let values = [1.0, 1e-5, 3e-6, 1e-6, 3e-7, 1e-7];
        let t = ComplexMatrix::diag_real(&values);
        let layout = SiteLayout::flat(6);
        let err = count_near_kernel(&t, &layout, &KernelConfig::default()).unwrap_err();
        assert!(matches!(err, PairingError::IndeterminateKernel { .. }));
    }

    #[test]
    fn family_stability_demands_agreement() {
        let cfg = KernelConfig::default();
        let fam = vec![
            (shift_box(10), SiteLayout::flat(10)),
            (shift_box(20), SiteLayout::flat(20)),
        ];
        let family = kernel_count(&fam, &cfg).unwrap();
        assert!(family.stable);
        assert_eq!(family.count(), 1);

        let mixed = vec![
            (shift_box(10), SiteLayout::flat(10)),
            (ComplexMatrix::identity(20), SiteLayout::flat(20)),
        ];
        let family = kernel_count(&mixed, &cfg).unwrap();
        assert!(!family.stable);
    }

    #[test]
    fn single_level_is_refused() {
        let fam = vec![(shift_box(10), SiteLayout::flat(10))];
        let err = kernel_count(&fam, &KernelConfig::default()).unwrap_err();
        assert!(matches!(err, PairingError::FamilyTooSmall { .. }));
    }

    #[test]
    fn doubled_layout_addresses_blocks() {
        let layout = SiteLayout::with_fiber(4, 2).doubled();
        assert_eq!(layout.dim(), 16);
        // Flat index 9 = block 1, site 0, component 1.
        assert_eq!(layout.site_of(9), 0);
        assert_eq!(layout.site_of(7), 3);
    }
}
