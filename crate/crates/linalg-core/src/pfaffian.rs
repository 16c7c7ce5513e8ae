//! Pfaffian of skew-symmetric matrices and a pivoted LU determinant.
//!
//! The Pfaffian uses Parlett–Reid-style skew tridiagonalization by unit
//! congruences with partial pivoting. A congruence G A Gᵗ with det G = 1
//! leaves the Pfaffian untouched, a row/column transposition flips its sign,
//! and once column k holds a single sub-diagonal entry the perfect-matching
//! expansion peels off the factor A[k, k+1]. Multipliers are bounded by 1
//! thanks to the pivot choice, so the scheme is numerically stable and the
//! sign bookkeeping is exact.

use crate::error::LinalgError;
use crate::matrix::{C64, ComplexMatrix};

/// Relative skew-symmetry tolerance accepted by [`pfaffian`].
pub const SKEW_TOL: f64 = 1e-12;

/// Pfaffian of an even-dimensional skew-symmetric complex matrix.
///
/// Input must satisfy ‖A + Aᵗ‖ ≤ 10⁻¹²·‖A‖; the exact skew average
/// ½(A − Aᵗ) is reduced, so rounding asymmetry cannot bias the result.
/// Satisfies pfaffian(A)² = det(A) and Pf(BᵗAB) = det(B)·Pf(A).
pub fn pfaffian(a: &ComplexMatrix) -> Result<C64, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n % 2 != 0 {
        return Err(LinalgError::OddDimension { dim: n });
    }
    let norm = a.norm();
    let residual = a.dist(&-&a.transpose());
    if norm > 0.0 && residual > SKEW_TOL * norm {
        return Err(LinalgError::NotSkewSymmetric {
            residual,
            tol: SKEW_TOL * norm,
        });
    }

    // Exact skew average.
    let mut m = ComplexMatrix::from_fn(n, n, |i, j| (a[(i, j)] - a[(j, i)]).scale(0.5));

    let zero = C64::new(0.0, 0.0);
    let mut pf = C64::new(1.0, 0.0);

    let mut k = 0;
    while k + 1 < n {
        if k + 2 < n {
            // Partial pivot: move the largest entry of column k into the
            // sub-diagonal slot. Each transposition flips the sign.
            let mut p = k + 1;
            let mut best = m[(k + 1, k)].norm();
            for i in k + 2..n {
                let v = m[(i, k)].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best == 0.0 {
                return Ok(zero); // row k decoupled: the matrix is singular
            }
            if p != k + 1 {
                swap_row_col(&mut m, p, k + 1);
                pf = -pf;
            }

            // Unit congruence eliminating column k below row k+1.
            let piv = m[(k + 1, k)];
            let mults: Vec<C64> = (k + 2..n).map(|i| m[(i, k)] / piv).collect();
            for (idx, i) in (k + 2..n).enumerate() {
                let mi = mults[idx];
                if mi == zero {
                    continue;
                }
                for j in k..n {
                    let delta = mi * m[(k + 1, j)];
                    m[(i, j)] -= delta;
                }
            }
            for (idx, i) in (k + 2..n).enumerate() {
                let mi = mults[idx];
                if mi == zero {
                    continue;
                }
                for j in k..n {
                    let delta = mi * m[(j, k + 1)];
                    m[(j, i)] -= delta;
                }
            }
        }
        pf *= m[(k, k + 1)];
        k += 2;
    }
    Ok(pf)
}

/// Determinant by LU factorization with partial pivoting.
pub fn determinant(a: &ComplexMatrix) -> Result<C64, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut det = C64::new(1.0, 0.0);
    for k in 0..n {
        let mut p = k;
        let mut best = m[(k, k)].norm();
        for i in k + 1..n {
            let v = m[(i, k)].norm();
            if v > best {
                best = v;
                p = i;
            }
        }
        if best == 0.0 {
            return Ok(C64::new(0.0, 0.0));
        }
        if p != k {
            for j in 0..n {
                let tmp = m[(k, j)];
                m[(k, j)] = m[(p, j)];
                m[(p, j)] = tmp;
            }
            det = -det;
        }
        let piv = m[(k, k)];
        det *= piv;
        for i in k + 1..n {
            let f = m[(i, k)] / piv;
            if f == C64::new(0.0, 0.0) {
                continue;
            }
            for j in k..n {
                let delta = f * m[(k, j)];
                m[(i, j)] -= delta;
            }
        }
    }
    Ok(det)
}

fn swap_row_col(m: &mut ComplexMatrix, a: usize, b: usize) {
    let n = m.rows();
    for j in 0..n {
        let tmp = m[(a, j)];
        m[(a, j)] = m[(b, j)];
        m[(b, j)] = tmp;
    }
    for i in 0..n {
        let tmp = m[(i, a)];
        m[(i, a)] = m[(i, b)];
        m[(i, b)] = tmp;
    }
}
