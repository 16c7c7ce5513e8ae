//! Singular spectra via the Hermitian eigenproblem of T*T.
//!
//! Index computations downstream only ever need the singular values together
//! with the right-singular vectors (kernel candidates of T live among the
//! smallest ones), so a one-sided decomposition is enough. The sum rule
//! Σσ² = ‖T‖²_F holds by construction because eigenvalue sums preserve the
//! trace of T*T.

use crate::eigen::hermitian_eig;
use crate::error::LinalgError;
use crate::matrix::{ComplexMatrix, C64};
use crate::solve::solve;

/// Singular values (descending) with matching right-singular vectors.
#[derive(Debug, Clone)]
pub struct SingularSpectrum {
    /// σ₁ ≥ σ₂ ≥ … ≥ σ_min(r,c) ≥ 0.
    pub values: Vec<f64>,
    /// Columns are the right-singular vectors, ordered like `values`.
    pub right_vectors: ComplexMatrix,
}

impl SingularSpectrum {
    /// Number of singular values strictly below `threshold`.
    pub fn count_below(&self, threshold: f64) -> usize {
        self.values.iter().filter(|&&s| s < threshold).count()
    }

    /// Smallest singular value.
    pub fn min(&self) -> f64 {
        *self.values.last().expect("empty spectrum")
    }
}

/// Full singular spectrum of a dense complex matrix.
///
/// Eigenvalues of the exact Hermitian average of T*T are clipped at zero and
/// rooted; the matching eigenvectors are returned as right-singular vectors.
/// For rectangular T only the min(rows, cols) structural singular values are
/// kept.
pub fn singular_spectrum(t: &ComplexMatrix) -> Result<SingularSpectrum, LinalgError> {
    let gram = &t.adjoint() * t;
    // T*T is Hermitian in exact arithmetic; the explicit average removes the
    // rounding asymmetry before validation.
    let dec = hermitian_eig(&gram.hermitian_part())?;

    let keep = t.rows().min(t.cols());
    let n = dec.eigenvalues.len();
    // Ascending eigenvalues → take the top `keep`, reversed to descending.
    let order: Vec<usize> = (n - keep..n).rev().collect();
    let values: Vec<f64> = order
        .iter()
        .map(|&i| dec.eigenvalues[i].max(0.0).sqrt())
        .collect();
    let right_vectors = dec.eigenvectors.select_cols(&order);

    Ok(SingularSpectrum {
        values,
        right_vectors,
    })
}

/// Polish near-null right-singular vectors by regularized inverse iteration.
///
/// Gram eigenvalues carry rounding noise of order ε‖T‖², so a singular value
/// that is exactly zero can surface anywhere below ~√ε·‖T‖ ≈ 1e-8·‖T‖ and
/// its vector is only accurate to the same level. One solve against
/// T*T + δ amplifies the kernel component by λ₂/δ, pushing true kernel
/// vectors down to rounding accuracy; vectors belonging to genuinely nonzero
/// singular values come back essentially unchanged. The returned set is
/// orthonormal; a candidate that collapses onto the span of earlier ones is
/// kept in its unpolished direction instead of being dropped.
pub fn polish_null_vectors(
    t: &ComplexMatrix,
    vectors: &[Vec<C64>],
) -> Result<Vec<Vec<C64>>, LinalgError> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let gram = (&t.adjoint() * t).hermitian_part();
    let n = gram.rows();
    let delta = 1e-14 * gram.norm().max(1.0);
    let mut shifted = gram;
    for i in 0..n {
        shifted[(i, i)] += delta;
    }
    let mut rhs = ComplexMatrix::zeros(n, vectors.len());
    for (k, v) in vectors.iter().enumerate() {
        for i in 0..n {
            rhs[(i, k)] = v[i];
        }
    }
    let solved = solve(&shifted, &rhs)?;

    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(vectors.len());
    for (k, original) in vectors.iter().enumerate() {
        let mut x: Vec<C64> = (0..n).map(|i| solved[(i, k)]).collect();
        let raw_norm = vec_norm(&x);
        orthogonalize(&mut x, &basis);
        let norm = vec_norm(&x);
        if norm <= 1e-8 * raw_norm.max(1.0) {
            // Collapsed onto earlier kernel directions: the candidate set was
            // larger than the true kernel. Keep the unpolished direction.
            x = original.clone();
            orthogonalize(&mut x, &basis);
            let fallback = vec_norm(&x);
            for z in &mut x {
                *z /= fallback;
            }
        } else {
            for z in &mut x {
                *z /= norm;
            }
        }
        basis.push(x);
    }
    Ok(basis)
}

fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn orthogonalize(x: &mut [C64], basis: &[Vec<C64>]) {
    for b in basis {
        let overlap: C64 = b.iter().zip(x.iter()).map(|(bi, xi)| bi.conj() * xi).sum();
        for (xi, bi) in x.iter_mut().zip(b) {
            *xi -= overlap * bi;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{c64, ComplexMatrix};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn identity_has_unit_spectrum() {
        let s = singular_spectrum(&ComplexMatrix::identity(5)).unwrap();
        assert_eq!(s.values.len(), 5);
        for v in &s.values {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn diagonal_spectrum() {
        let t = ComplexMatrix::diag_real(&[2.0, 0.0]);
        let s = singular_spectrum(&t).unwrap();
        assert!((s.values[0] - 2.0).abs() < 1e-12);
        assert!(s.values[1].abs() < 1e-12);
    }

    #[test]
    fn frobenius_sum_rule() {
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..5 {
            let t = ComplexMatrix::from_fn(6, 6, |_, _| {
                c64(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
            });
            let s = singular_spectrum(&t).unwrap();
            let sum: f64 = s.values.iter().map(|v| v * v).sum();
            let fro = t.norm().powi(2);
            assert!((sum - fro).abs() <= 1e-9 * fro.max(1.0));
        }
    }

    #[test]
    fn squares_match_gram_eigenvalues() {
        let mut rng = StdRng::seed_from_u64(1);
        let t = ComplexMatrix::from_fn(6, 6, |_, _| {
            c64(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        });
        let gram = (&t.adjoint() * &t).hermitian_part();
        let eig = crate::eigen::hermitian_eig(&gram).unwrap();
        let s = singular_spectrum(&t).unwrap();
        for (i, v) in s.values.iter().enumerate() {
            let lam = eig.eigenvalues[5 - i];
            assert!((v * v - lam).abs() < 1e-10);
        }
    }

    #[test]
    fn adjoint_spectrum_matches() {
        let mut rng = StdRng::seed_from_u64(9);
        let t = ComplexMatrix::from_fn(7, 7, |_, _| {
            c64(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        });
        let a = singular_spectrum(&t).unwrap();
        let b = singular_spectrum(&t.adjoint()).unwrap();
        for (x, y) in a.values.iter().zip(&b.values) {
            assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn polish_reaches_rounding_accuracy_on_exact_kernels() {
        // A projection complement whose zero eigenvalue is only reached
        // through a rotation: the raw gram route leaves the smallest
        // singular value near sqrt(eps), not zero.
        let t = ComplexMatrix::from_rows(&[
            &[c64(0.5, 0.0), c64(-0.5, 0.0)],
            &[c64(-0.5, 0.0), c64(0.5, 0.0)],
        ]);
        let s = singular_spectrum(&t).unwrap();
        let raw = vec![s.right_vectors.col(1)];
        let polished = polish_null_vectors(&t, &raw).unwrap();
        let residual: f64 = t
            .mul_vec(&polished[0])
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(residual < 1e-12, "residual {residual}");
    }

    #[test]
    fn polish_keeps_orthonormality_and_passes_zero_through() {
        let zero = ComplexMatrix::zeros(3, 3);
        let raw = vec![
            vec![c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)],
            vec![c64(0.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0)],
        ];
        let polished = polish_null_vectors(&zero, &raw).unwrap();
        assert_eq!(polished.len(), 2);
        let dot: f64 = polished[0]
            .iter()
            .zip(&polished[1])
            .map(|(a, b)| (a.conj() * b).norm())
            .sum();
        assert!(dot < 1e-12);
        for v in &polished {
            let n: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            assert!((n - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn right_vectors_reach_singular_values() {
        let mut rng = StdRng::seed_from_u64(17);
        let t = ComplexMatrix::from_fn(5, 5, |_, _| {
            c64(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        });
        let s = singular_spectrum(&t).unwrap();
        for j in 0..5 {
            let v = s.right_vectors.col(j);
            let tv = t.mul_vec(&v);
            let norm: f64 = tv.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            assert!((norm - s.values[j]).abs() < 1e-8);
        }
    }
}
