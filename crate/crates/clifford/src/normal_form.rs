//! Real orthogonal change of basis bringing an operator pair to a fixed
//! normal form.
//!
//! A real unitary S with S^2 = +1 is conjugate to `s1 (x) 1`; with S^2 = -1
//! to `is2 (x) 1`. When a second real involution W anticommutes with S, one
//! basis handles both; when it commutes, the construction runs per W
//! eigenspace. For the Clifford-derived pairs this yields the period-eight
//! table of target forms
//!
//! ```text
//! d mod 8:   1          2          3          4          5          6          7          8
//! S form:    s1 (x) 1   is2 (x) 1  is2 (x) 1  1 (x) is2  is2 (x) 1  s1 (x) 1   s1 (x) 1   1 (x) s1 (x) 1
//! W form:               s3 (x) 1              s3 (x) 1              s3 (x) 1              s3 (x) 1 (x) 1
//! ```
//!
//! The d = 1 pair is the doubled scalar case (S is the identity, conjugate to
//! nothing off-diagonal) and is returned unchanged.

use linalg_core::{c64, hermitian_eig, i_sigma2, sigma1, sigma3, ComplexMatrix, LinalgError};

use crate::ops::symmetry_ops;

/// Tolerance for the structural checks on generic (non-Clifford) input pairs.
const INPUT_TOL: f64 = 1e-10;

/// Cayley rotation `c = (1/sqrt 2) [[1, -i], [1, i]]`, cycling the three
/// Pauli directions under conjugation.
pub fn cayley() -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_rows(&[
        &[c64(s, 0.0), c64(0.0, -s)],
        &[c64(s, 0.0), c64(0.0, s)],
    ])
}

/// The Cayley rotation acting on the leading two-dimensional factor of a
/// space of size `2 * block`.
pub fn cayley_extended(block: usize) -> ComplexMatrix {
    cayley().kron(&ComplexMatrix::identity(block))
}

/// Real involution `f = (1/sqrt 2) [[1, 1], [1, -1]]` exchanging the first
/// and third Pauli directions.
pub fn hadamard_involution() -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_real_rows(&[&[s, s], &[s, -s]])
}

/// Result of the reduction: a real orthogonal `basis` O together with the
/// exact target matrices `sigma_form` = O^t S O and, when a second operator
/// was supplied, `omega_form` = O^t W O.
pub struct NormalForm {
    pub basis: ComplexMatrix,
    pub sigma_form: ComplexMatrix,
    pub omega_form: Option<ComplexMatrix>,
}

fn structural(context: String) -> LinalgError {
    LinalgError::DimensionMismatch { context }
}

/// Drops a rounding-level imaginary part.
fn realified(m: &ComplexMatrix) -> ComplexMatrix {
    debug_assert!(m.imag_norm() < INPUT_TOL, "imaginary residue {}", m.imag_norm());
    ComplexMatrix::from_fn(m.rows(), m.cols(), |i, j| c64(m[(i, j)].re, 0.0))
}

/// Real orthonormal eigenbasis of a real symmetric involution, +1 block
/// first. Requires equal multiplicities.
fn split_involution(s: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    let eig = hermitian_eig(s)?;
    let n = s.rows();
    let plus: Vec<usize> = (0..n).filter(|&k| eig.eigenvalues[k] > 0.0).collect();
    let minus: Vec<usize> = (0..n).filter(|&k| eig.eigenvalues[k] < 0.0).collect();
    if plus.len() != minus.len() {
        return Err(structural(format!(
            "involution eigenspaces have sizes {} and {}",
            plus.len(),
            minus.len()
        )));
    }
    let order: Vec<usize> = plus.into_iter().chain(minus).collect();
    Ok(realified(&eig.eigenvectors.select_cols(&order)))
}

/// Real orthogonal R with `R^t S R = is2 (x) 1` for a real antisymmetric
/// orthogonal S.
///
/// The +i eigenvectors v of S pair with their conjugates; the real and
/// imaginary parts `sqrt 2 Re v`, `sqrt 2 Im v` then form a real orthonormal
/// basis in which S acts as the standard symplectic rotation.
fn antisymmetric_normal_basis(s: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    let n = s.rows();
    // iS is Hermitian; S v = i v corresponds to (iS) v = -v
    let h = s.scale(c64(0.0, 1.0));
    let eig = hermitian_eig(&h)?;
    let neg: Vec<usize> = (0..n).filter(|&k| eig.eigenvalues[k] < 0.0).collect();
    if neg.len() * 2 != n {
        return Err(structural(format!(
            "rotation eigenvalue i has multiplicity {} of {}",
            neg.len(),
            n
        )));
    }
    let v = eig.eigenvectors.select_cols(&neg);
    let m = neg.len();
    let root2 = std::f64::consts::SQRT_2;
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        if j < m {
            c64(root2 * v[(i, j)].re, 0.0)
        } else {
            c64(root2 * v[(i, j - m)].im, 0.0)
        }
    }))
}

/// Sign s with `m = s * identity`, within [`INPUT_TOL`].
fn involution_sign(m: &ComplexMatrix) -> Result<i8, LinalgError> {
    let n = m.rows();
    let one = ComplexMatrix::identity(n);
    if m.dist(&one) <= INPUT_TOL * (n as f64) {
        Ok(1)
    } else if m.dist(&one.scale_re(-1.0)) <= INPUT_TOL * (n as f64) {
        Ok(-1)
    } else {
        Err(structural("operator square is not a sign".to_string()))
    }
}

fn kron_chain(factors: &[&ComplexMatrix]) -> ComplexMatrix {
    factors
        .iter()
        .skip(1)
        .fold((*factors[0]).clone(), |acc, f| acc.kron(f))
}

/// Computes a real orthogonal basis reducing a real unitary `sigma` with
/// `sigma^2 = +-1` (and optionally a commuting-or-anticommuting real
/// involution `omega` with evenly split eigenspaces) to the fixed target
/// forms.
///
/// # Errors
/// Structural errors when the inputs are not real sign-square unitaries, when
/// eigenspace dimensions fail to match, or when the eigensolver does not
/// converge.
pub fn normal_form(
    sigma: &ComplexMatrix,
    omega: Option<&ComplexMatrix>,
) -> Result<NormalForm, LinalgError> {
    let n = sigma.rows();
    if !sigma.is_square() || n % 2 != 0 {
        return Err(structural(format!("operator size {} is not even", n)));
    }
    if sigma.imag_norm() > INPUT_TOL * (n as f64) {
        return Err(structural("first operator is not real".to_string()));
    }
    let eta = involution_sign(&(sigma * sigma))?;
    let half = n / 2;

    let omega = match omega {
        None => {
            let (basis, sigma_form) = if eta == 1 {
                let split = split_involution(sigma)?;
                let f = hadamard_involution().kron(&ComplexMatrix::identity(half));
                (&split * &f, sigma1().kron(&ComplexMatrix::identity(half)))
            } else {
                (
                    antisymmetric_normal_basis(sigma)?,
                    i_sigma2().kron(&ComplexMatrix::identity(half)),
                )
            };
            return Ok(NormalForm {
                basis,
                sigma_form,
                omega_form: None,
            });
        }
        Some(w) => w,
    };

    // paired case: reduce the involution to the diagonal sign first, then
    // sigma inside that grading
    if omega.rows() != n {
        return Err(structural(format!(
            "operator sizes {} and {} differ",
            n,
            omega.rows()
        )));
    }
    if omega.imag_norm() > INPUT_TOL * (n as f64) {
        return Err(structural("second operator is not real".to_string()));
    }
    involution_sign(&(omega * omega)).map_err(|_| {
        structural("second operator does not square to the identity".to_string())
    })?;

    let r1 = split_involution(omega)?;
    let sigma_graded = realified(&(&(&r1.transpose() * sigma) * &r1));
    let ws = omega * sigma;
    let sw = sigma * omega;
    let anticommute = ws.dist(&sw.scale_re(-1.0)) <= ws.dist(&sw);

    let omega_form = sigma3().kron(&ComplexMatrix::identity(half));
    let (basis, sigma_form) = if anticommute {
        // off-diagonal sigma: absorb the upper-right orthogonal block
        let a = sigma_graded.block(0, half, half, half);
        let d_fix = a.direct_sum(&ComplexMatrix::identity(half));
        let target = if eta == 1 {
            sigma1().kron(&ComplexMatrix::identity(half))
        } else {
            i_sigma2().kron(&ComplexMatrix::identity(half))
        };
        (&r1 * &d_fix, target)
    } else {
        // block-diagonal sigma: reduce each eigenblock independently
        if half % 2 != 0 {
            return Err(structural(format!(
                "eigenblocks of size {} cannot split further",
                half
            )));
        }
        let p = sigma_graded.block(0, 0, half, half);
        let q = sigma_graded.block(half, half, half, half);
        let quarter = half / 2;
        let (rp, rq, inner) = if eta == 1 {
            let f = hadamard_involution().kron(&ComplexMatrix::identity(quarter));
            (
                &split_involution(&p)? * &f,
                &split_involution(&q)? * &f,
                sigma1(),
            )
        } else {
            (
                antisymmetric_normal_basis(&p)?,
                antisymmetric_normal_basis(&q)?,
                i_sigma2(),
            )
        };
        let target = kron_chain(&[
            &ComplexMatrix::identity(2),
            &inner,
            &ComplexMatrix::identity(quarter),
        ]);
        (&r1 * &rp.direct_sum(&rq), target)
    };
    Ok(NormalForm {
        basis,
        sigma_form,
        omega_form: Some(omega_form),
    })
}

/// [`normal_form`] applied to the Clifford operator pair at dimension d.
///
/// d = 1 is the doubled representation whose first operator is the identity;
/// no off-diagonal normal form exists there, so the basis returned is the
/// identity and both stored forms are the operators themselves.
pub fn clifford_normal_form(d: usize) -> Result<NormalForm, LinalgError> {
    let ops = symmetry_ops(d);
    if d == 1 {
        let dim = ops.sigma.matrix.rows();
        return Ok(NormalForm {
            basis: ComplexMatrix::identity(dim),
            sigma_form: ops.sigma.matrix,
            omega_form: None,
        });
    }
    normal_form(&ops.sigma.matrix, ops.omega.as_ref().map(|w| &w.matrix))
}
