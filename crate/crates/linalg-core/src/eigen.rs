//! Hermitian eigendecomposition and derived spectral operations.
//!
//! The solver is the classic two-stage dense path: unitary Householder
//! reduction to a real symmetric tridiagonal matrix, then implicit-shift QL
//! iteration with accumulated rotations. Everything is deterministic: for a
//! bit-identical input the decomposition is bit-identical, and each
//! eigenvector carries a fixed phase convention (the first component of
//! largest modulus is made real positive) so downstream golden tests can
//! compare matrices directly.

use crate::error::LinalgError;
use crate::matrix::{C64, ComplexMatrix};

/// Gap tolerance used by [`spectral_projection`] and [`signature`]:
/// an eigenvalue closer than this to the reference energy means the
/// operation is ill-posed on the given input.
pub const GAP_TOL: f64 = 1e-8;

/// Relative Hermiticity tolerance accepted by [`hermitian_eig`].
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Result of a Hermitian eigendecomposition.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    /// Reconstructs V Λ V*.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let lam = ComplexMatrix::diag_real(&self.eigenvalues);
        &(v * &lam) * &v.adjoint()
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// The input must satisfy ‖A − A*‖ ≤ 10⁻¹²·‖A‖ (Frobenius); the measured
/// asymmetry is reported otherwise. Internally the exact Hermitian average
/// ½(A + A*) is decomposed, so rounding-level asymmetry never leaks into the
/// spectrum.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<SpectralDecomposition, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let norm = a.norm();
    let asymmetry = a.hermitian_residual();
    if norm > 0.0 && asymmetry > HERMITICITY_TOL * norm {
        return Err(LinalgError::NotHermitian {
            asymmetry,
            tol: HERMITICITY_TOL * norm,
        });
    }
    let h = a.hermitian_part();

    let (mut d, mut e, mut z) = tridiagonalize(&h);
    ql_implicit(&mut d, &mut e, &mut z)?;
    sort_ascending(&mut d, &mut z);
    fix_phases(&mut z);

    Ok(SpectralDecomposition {
        eigenvalues: d,
        eigenvectors: z,
    })
}

/// Unitary reduction A = Q T Q* with T real symmetric tridiagonal.
///
/// Returns (diagonal, subdiagonal, Q). Elementary reflectors are chosen so
/// that every subdiagonal of T comes out real (the complex phase is absorbed
/// into Q), which lets the QL stage run in real arithmetic.
fn tridiagonalize(h: &ComplexMatrix) -> (Vec<f64>, Vec<f64>, ComplexMatrix) {
    let n = h.rows();
    let mut a = h.clone();
    let mut q = ComplexMatrix::identity(n);
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n]; // e[k] couples k and k+1; e[n-1] unused

    for k in 0..n.saturating_sub(1) {
        let m = n - k - 1; // length of the column below the diagonal
        // Column to annihilate: x = A[k+1.., k].
        let alpha = a[(k + 1, k)];
        let mut tail_sq = 0.0;
        for i in k + 2..n {
            tail_sq += a[(i, k)].norm_sqr();
        }

        if tail_sq == 0.0 && alpha.im == 0.0 {
            // Already in real tridiagonal position.
            e[k] = alpha.re;
            continue;
        }

        // Elementary reflector H = 1 − τ v v* with H* x = β e₁, β real.
        let beta = -(alpha.norm_sqr() + tail_sq).sqrt().copysign(alpha.re);
        let tau = C64::new((beta - alpha.re) / beta, -alpha.im / beta);
        let denom = alpha - C64::new(beta, 0.0);
        let mut v = vec![C64::new(0.0, 0.0); m];
        v[0] = C64::new(1.0, 0.0);
        for i in 1..m {
            v[i] = a[(k + 1 + i, k)] / denom;
        }

        // Trailing block update A₂ ← H* A₂ H = A₂ − w v* − v w*,
        // with u = A₂ v, c = v*u (real) and w = τ u − ½|τ|² c v.
        let mut u = vec![C64::new(0.0, 0.0); m];
        for i in 0..m {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..m {
                acc += a[(k + 1 + i, k + 1 + j)] * v[j];
            }
            u[i] = acc;
        }
        let c: C64 = v.iter().zip(&u).map(|(vi, ui)| vi.conj() * ui).sum();
        let half = tau * tau.conj() * c * C64::new(0.5, 0.0);
        let w: Vec<C64> = u
            .iter()
            .zip(&v)
            .map(|(ui, vi)| tau * ui - half * vi)
            .collect();
        for i in 0..m {
            for j in 0..m {
                let upd = w[i] * v[j].conj() + v[i] * w[j].conj();
                a[(k + 1 + i, k + 1 + j)] -= upd;
            }
        }

        // New column entries: β on the subdiagonal, zeros below.
        a[(k + 1, k)] = C64::new(beta, 0.0);
        a[(k, k + 1)] = C64::new(beta, 0.0);
        for i in k + 2..n {
            a[(i, k)] = C64::new(0.0, 0.0);
            a[(k, i)] = C64::new(0.0, 0.0);
        }
        e[k] = beta;

        // Accumulate Q ← Q H.
        for r in 0..n {
            let mut s = C64::new(0.0, 0.0);
            for j in 0..m {
                s += q[(r, k + 1 + j)] * v[j];
            }
            let ts = tau * s;
            for j in 0..m {
                let upd = ts * v[j].conj();
                q[(r, k + 1 + j)] -= upd;
            }
        }
    }

    for i in 0..n {
        d[i] = a[(i, i)].re;
    }
    (d, e, q)
}

/// Implicit-shift QL iteration on a real symmetric tridiagonal matrix,
/// accumulating the (real) plane rotations into the complex columns of `z`.
fn ql_implicit(
    d: &mut [f64],
    e: &mut [f64],
    z: &mut ComplexMatrix,
) -> Result<(), LinalgError> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    const MAX_SWEEPS: usize = 60;

    for l in 0..n {
        let mut iter = 0usize;
        loop {
            // Look for a negligible subdiagonal element to split the problem.
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_SWEEPS {
                return Err(LinalgError::NoConvergence {
                    iterations: MAX_SWEEPS,
                });
            }

            // Wilkinson-style shift from the leading 2x2.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;

            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // Rotation chain collapsed; deflate and restart this l.
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                let t = (d[i] - g) * s + 2.0 * c * b;
                p = s * t;
                d[i + 1] = g + p;
                g = c * t - b;

                for row in 0..z.rows() {
                    let zi = z[(row, i)];
                    let zi1 = z[(row, i + 1)];
                    z[(row, i + 1)] = zi.scale(s) + zi1.scale(c);
                    z[(row, i)] = zi.scale(c) - zi1.scale(s);
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Stable ascending sort of eigenpairs; ties keep their pre-sort order so the
/// result is deterministic for bit-identical input.
fn sort_ascending(d: &mut Vec<f64>, z: &mut ComplexMatrix) {
    let n = d.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).expect("eigenvalue is NaN"));
    let sorted_d: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let sorted_z = z.select_cols(&order);
    *d = sorted_d;
    *z = sorted_z;
}

/// Phase convention: in each column the first component of largest modulus is
/// rotated to the positive real axis.
fn fix_phases(z: &mut ComplexMatrix) {
    let (n, cols) = (z.rows(), z.cols());
    for j in 0..cols {
        let mut p = 0;
        let mut best = 0.0;
        for i in 0..n {
            let m = z[(i, j)].norm();
            if m > best {
                best = m;
                p = i;
            }
        }
        if best == 0.0 {
            continue;
        }
        let phase = z[(p, j)] / C64::new(best, 0.0);
        let factor = phase.conj();
        for i in 0..n {
            let v = z[(i, j)] * factor;
            z[(i, j)] = v;
        }
        // Kill the rounding-level imaginary residue of the pivot component.
        let pivot = z[(p, j)];
        z[(p, j)] = C64::new(pivot.norm(), 0.0);
    }
}

/// Spectral projection of a Hermitian matrix onto energies at or below `mu`.
///
/// Rejects gapless inputs: an eigenvalue within [`GAP_TOL`] of `mu` makes the
/// projection discontinuous, so the error carries the offending eigenvalue.
pub fn spectral_projection(h: &ComplexMatrix, mu: f64) -> Result<ComplexMatrix, LinalgError> {
    let dec = hermitian_eig(h)?;
    for &lam in &dec.eigenvalues {
        if (lam - mu).abs() < GAP_TOL {
            return Err(LinalgError::GaplessAtFermiLevel {
                eigenvalue: lam,
                mu,
                tol: GAP_TOL,
            });
        }
    }
    let filled: Vec<usize> = dec
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &lam)| lam < mu)
        .map(|(i, _)| i)
        .collect();
    if filled.is_empty() {
        return Ok(ComplexMatrix::zeros(h.rows(), h.cols()));
    }
    let v = dec.eigenvectors.select_cols(&filled);
    Ok(&v * &v.adjoint())
}

/// Signature of an invertible Hermitian matrix:
/// (#positive eigenvalues) − (#negative eigenvalues).
pub fn signature(h: &ComplexMatrix) -> Result<i64, LinalgError> {
    let dec = hermitian_eig(h)?;
    let mut sig: i64 = 0;
    for &lam in &dec.eigenvalues {
        if lam.abs() < GAP_TOL {
            return Err(LinalgError::DegenerateSignature {
                eigenvalue: lam,
                tol: GAP_TOL,
            });
        }
        sig += if lam > 0.0 { 1 } else { -1 };
    }
    Ok(sig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{c64, sigma1, sigma3};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_hermitian(n: usize, rng: &mut StdRng) -> ComplexMatrix {
        let g = ComplexMatrix::from_fn(n, n, |_, _| {
            c64(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        });
        g.hermitian_part()
    }

    #[test]
    fn diagonal_matrix_eigenvalues() {
        let dec = hermitian_eig(&sigma3()).unwrap();
        assert_eq!(dec.eigenvalues, vec![-1.0, 1.0]);
    }

    #[test]
    fn sigma1_eigenpairs_follow_phase_convention() {
        let dec = hermitian_eig(&sigma1()).unwrap();
        assert!((dec.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((dec.eigenvalues[1] - 1.0).abs() < 1e-14);
        let v = &dec.eigenvectors;
        let r = 0.5f64.sqrt();
        // (1,−1)/√2 and (1,1)/√2, first components real positive.
        assert!((v[(0, 0)] - c64(r, 0.0)).norm() < 1e-12);
        assert!((v[(1, 0)] - c64(-r, 0.0)).norm() < 1e-12);
        assert!((v[(0, 1)] - c64(r, 0.0)).norm() < 1e-12);
        assert!((v[(1, 1)] - c64(r, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn random_reconstruction_is_tight() {
        let mut rng = StdRng::seed_from_u64(7);
        for n in [1, 2, 3, 5, 8, 13, 21] {
            let h = random_hermitian(n, &mut rng);
            let dec = hermitian_eig(&h).unwrap();
            assert!(
                dec.reconstruct().dist(&h) <= 1e-10 * h.norm().max(1.0),
                "reconstruction failed at n={n}"
            );
            assert!(dec.eigenvectors.unitary_residual() < 1e-10);
            for w in dec.eigenvalues.windows(2) {
                assert!(w[0] <= w[1], "eigenvalues not ascending");
            }
        }
    }

    #[test]
    fn decomposition_is_deterministic() {
        let mut rng = StdRng::seed_from_u64(11);
        let h = random_hermitian(9, &mut rng);
        let a = hermitian_eig(&h).unwrap();
        let b = hermitian_eig(&h).unwrap();
        assert_eq!(a.eigenvalues, b.eigenvalues);
        assert_eq!(a.eigenvectors, b.eigenvectors);
    }

    #[test]
    fn non_hermitian_input_is_rejected_with_residual() {
        let mut m = sigma1();
        m[(0, 1)] = c64(1.0, 1e-6);
        match hermitian_eig(&m) {
            Err(LinalgError::NotHermitian { asymmetry, .. }) => {
                assert!(asymmetry > 1e-7);
            }
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn projection_of_sigma3_at_zero() {
        let p = spectral_projection(&sigma3(), 0.0).unwrap();
        let expected =
            ComplexMatrix::from_real_rows(&[&[0.0, 0.0], &[0.0, 1.0]]);
        assert!(p.approx_eq(&expected, 1e-12));
    }

    #[test]
    fn projection_of_sigma1_at_zero() {
        let p = spectral_projection(&sigma1(), 0.0).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[&[0.5, -0.5], &[-0.5, 0.5]]);
        assert!(p.approx_eq(&expected, 1e-12));
        assert!(p.projection_residual() < 1e-10);
    }

    #[test]
    fn gapless_projection_is_rejected() {
        match spectral_projection(&sigma3(), 1.0) {
            Err(LinalgError::GaplessAtFermiLevel { eigenvalue, .. }) => {
                assert!((eigenvalue - 1.0).abs() < 1e-12);
            }
            other => panic!("expected gapless error, got {other:?}"),
        }
    }

    #[test]
    fn projection_commutes_with_input() {
        let mut rng = StdRng::seed_from_u64(3);
        let h = random_hermitian(8, &mut rng);
        let mu = 0.05;
        if let Ok(p) = spectral_projection(&h, mu) {
            let comm = (&(&p * &h) - &(&h * &p)).norm();
            assert!(comm <= 1e-10 * h.norm());
        }
    }

    #[test]
    fn signature_counts_signs() {
        assert_eq!(signature(&sigma3()).unwrap(), 0);
        let d = ComplexMatrix::diag_real(&[1.0, 1.0, -1.0]);
        assert_eq!(signature(&d).unwrap(), 1);
        // Shift a modest random Hermitian far into the positive cone.
        let mut rng = StdRng::seed_from_u64(5);
        let h = random_hermitian(8, &mut rng);
        let shifted = &h + &ComplexMatrix::identity(8).scale_re(3.0);
        assert_eq!(signature(&shifted).unwrap(), 8);
    }

    #[test]
    fn signature_rejects_near_singular() {
        let d = ComplexMatrix::diag_real(&[1.0, 1e-12]);
        assert!(matches!(
            signature(&d),
            Err(LinalgError::DegenerateSignature { .. })
        ));
    }
}
