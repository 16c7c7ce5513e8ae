//! Dense linear solves, inversion and the matrix exponential.
//!
//! Small-matrix utilities built on partially pivoted LU. `expm` uses scaling
//! and squaring with a truncated Taylor series; after scaling the norm below
//! 1/2 the truncation error of the 20-term series is far below f64 roundoff.

use crate::error::LinalgError;
use crate::matrix::{c64, ComplexMatrix, C64};

/// Packed LU factorization with partial pivoting, `P A = L U`.
///
/// `lu` stores the unit lower triangle strictly below the diagonal and `U` on
/// and above it; `perm` is the row permutation applied to the right-hand side.
struct LuFactors {
    lu: ComplexMatrix,
    perm: Vec<usize>,
}

fn lu_factor(a: &ComplexMatrix) -> Result<LuFactors, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let mut p = k;
        let mut best = lu[(k, k)].norm();
        for i in k + 1..n {
            let v = lu[(i, k)].norm();
            if v > best {
                best = v;
                p = i;
            }
        }
        if best == 0.0 {
            return Err(LinalgError::SingularMatrix { pivot: best });
        }
        if p != k {
            for j in 0..n {
                let t = lu[(k, j)];
                lu[(k, j)] = lu[(p, j)];
                lu[(p, j)] = t;
            }
            perm.swap(k, p);
        }
        let piv = lu[(k, k)];
        for i in k + 1..n {
            let m = lu[(i, k)] / piv;
            lu[(i, k)] = m;
            for j in k + 1..n {
                let s = lu[(k, j)];
                lu[(i, j)] -= m * s;
            }
        }
    }
    Ok(LuFactors { lu, perm })
}

impl LuFactors {
    /// Solves `A x = b` for every column of `b`.
    fn solve(&self, b: &ComplexMatrix) -> ComplexMatrix {
        let n = self.lu.rows();
        let m = b.cols();
        let mut x = ComplexMatrix::zeros(n, m);
        // permuted copy, then forward and back substitution per column
        for j in 0..m {
            let mut y: Vec<C64> = (0..n).map(|i| b[(self.perm[i], j)]).collect();
            for i in 1..n {
                let mut acc = y[i];
                for k in 0..i {
                    acc -= self.lu[(i, k)] * y[k];
                }
                y[i] = acc;
            }
            for i in (0..n).rev() {
                let mut acc = y[i];
                for k in i + 1..n {
                    acc -= self.lu[(i, k)] * y[k];
                }
                y[i] = acc / self.lu[(i, i)];
            }
            for i in 0..n {
                x[(i, j)] = y[i];
            }
        }
        x
    }
}

/// Solves `A X = B` by partially pivoted LU.
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    if a.rows() != b.rows() {
        return Err(LinalgError::DimensionMismatch {
            context: format!("solve: lhs is {}x{}, rhs has {} rows", a.rows(), a.cols(), b.rows()),
        });
    }
    Ok(lu_factor(a)?.solve(b))
}

/// Matrix inverse by partially pivoted LU.
pub fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    let f = lu_factor(a)?;
    Ok(f.solve(&ComplexMatrix::identity(a.rows())))
}

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
pub fn expm(a: &ComplexMatrix) -> ComplexMatrix {
    assert!(a.is_square(), "expm requires a square matrix");
    let n = a.rows();
    let norm = a.norm();
    // scale so the series argument has norm <= 1/2
    let s = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let b = a.scale_re(0.5f64.powi(s as i32));
    // Horner evaluation of sum_{k<=20} B^k / k!
    let mut e = ComplexMatrix::identity(n);
    for k in (1..=20usize).rev() {
        e = &ComplexMatrix::identity(n) + &(&b * &e).scale(c64(1.0 / k as f64, 0.0));
    }
    for _ in 0..s {
        e = &e * &e;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{c64, ComplexMatrix};

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{} vs {} (tol {})", a, b, tol);
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let mut a = ComplexMatrix::zeros(4, 4);
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for i in 0..4 {
            for j in 0..4 {
                a[(i, j)] = c64(next(), next());
            }
            a[(i, i)] += c64(2.0, 0.0); // keep it comfortably nonsingular
        }
        let inv = inverse(&a).unwrap();
        close((&inv * &a).dist(&ComplexMatrix::identity(4)), 0.0, 1e-12);
        close((&a * &inv).dist(&ComplexMatrix::identity(4)), 0.0, 1e-12);
    }

    #[test]
    fn solve_matches_direct_substitution() {
        let a = ComplexMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 3.0]]);
        let b = ComplexMatrix::from_real_rows(&[&[5.0], &[10.0]]);
        let x = solve(&a, &b).unwrap();
        // 2x + y = 5, x + 3y = 10 -> x = 1, y = 3
        close((x[(0, 0)] - c64(1.0, 0.0)).norm(), 0.0, 1e-14);
        close((x[(1, 0)] - c64(3.0, 0.0)).norm(), 0.0, 1e-14);
    }

    #[test]
    fn singular_matrix_is_reported() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert!(matches!(
            inverse(&a),
            Err(LinalgError::SingularMatrix { .. })
        ));
    }

    #[test]
    fn expm_of_zero_is_identity() {
        let z = ComplexMatrix::zeros(3, 3);
        assert!(expm(&z).approx_eq(&ComplexMatrix::identity(3), 1e-15));
    }

    #[test]
    fn expm_matches_scalar_exponentials_on_diagonal_input() {
        let a = ComplexMatrix::diag(&[c64(1.0, 0.0), c64(-0.5, 2.0)]);
        let e = expm(&a);
        close((e[(0, 0)] - c64(1.0f64.exp(), 0.0)).norm(), 0.0, 1e-13);
        let w = c64(-0.5, 2.0).exp();
        close((e[(1, 1)] - w).norm(), 0.0, 1e-13);
        close(e[(0, 1)].norm(), 0.0, 1e-15);
    }

    #[test]
    fn expm_inverse_is_expm_of_negation() {
        let a = ComplexMatrix::from_rows(&[
            &[c64(0.1, 0.3), c64(-1.2, 0.4)],
            &[c64(0.7, -0.2), c64(-0.3, 0.0)],
        ]);
        let prod = &expm(&a) * &expm(&a.scale_re(-1.0));
        assert!(prod.approx_eq(&ComplexMatrix::identity(2), 1e-13));
    }

    #[test]
    fn expm_of_nilpotent_shift_terminates_exactly() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let e = expm(&a);
        assert!(e.approx_eq(
            &ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]),
            1e-15
        ));
    }
}
