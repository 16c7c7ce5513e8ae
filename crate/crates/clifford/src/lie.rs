//! Membership predicates and constructions for the Lie algebras and groups
//! cut out of the complex matrices by the reference operators.
//!
//! For a fixed d the algebra consists of all A with
//!
//! ```text
//! S* conj(A) S = A          (kappa = +1)        S* conj(A) S = -A*   (kappa = -1)
//! ```
//!
//! joined for even d by `W* A W = -A*`. At group level the conditions read
//! `S* conj(T) S = T` resp. `= (T*)^{-1}`, and `T* W T = W` for even d. The
//! reference operators act on the rightmost tensor factor, so matrices of any
//! size divisible by the representation dimension participate. Period eight
//! in d, these are the eight real families of classical matrix groups.

use linalg_core::{c64, expm, ComplexMatrix, LinalgError};

use crate::group::kappa;
use crate::normal_form::cayley;
use crate::ops::symmetry_ops;
use crate::rep::{rep_dim, representation};

/// Residuals at or below this bound count as membership.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Membership verdict together with the measured relation residuals,
/// normalized by the matrix norm.
#[derive(Debug, Clone)]
pub struct MembershipReport {
    pub member: bool,
    pub sigma_residual: f64,
    /// `None` for odd d, where only the first relation applies.
    pub omega_residual: Option<f64>,
}

fn structural(context: String) -> LinalgError {
    LinalgError::DimensionMismatch { context }
}

/// The reference operator acting on the rightmost factor of a larger space.
fn extend(op: &ComplexMatrix, total: usize) -> Result<ComplexMatrix, LinalgError> {
    let f = op.rows();
    if total % f != 0 {
        return Err(structural(format!(
            "matrix size {} is not a multiple of the operator size {}",
            total, f
        )));
    }
    Ok(ComplexMatrix::identity(total / f).kron(op))
}

/// `A` for kappa = +1, `-A*` for kappa = -1.
fn kappa_flip(a: &ComplexMatrix, k: i8) -> ComplexMatrix {
    if k == 1 {
        a.clone()
    } else {
        a.adjoint().scale_re(-1.0)
    }
}

/// Checks the algebra relations for a matrix on any multiple of the
/// representation space.
pub fn algebra_membership(
    a: &ComplexMatrix,
    d: usize,
) -> Result<MembershipReport, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let ops = symmetry_ops(d);
    let s = extend(&ops.sigma.matrix, a.rows())?;
    let scale = a.norm().max(1.0);
    let lhs = &(&s.adjoint() * &a.conj()) * &s;
    let sigma_residual = lhs.dist(&kappa_flip(a, kappa(d))) / scale;
    let omega_residual = match &ops.omega {
        Some(w) => {
            let we = extend(&w.matrix, a.rows())?;
            let lhs = &(&we.adjoint() * a) * &we;
            Some(lhs.dist(&a.adjoint().scale_re(-1.0)) / scale)
        }
        None => None,
    };
    let member = sigma_residual <= MEMBERSHIP_TOL
        && omega_residual.map_or(true, |r| r <= MEMBERSHIP_TOL);
    Ok(MembershipReport {
        member,
        sigma_residual,
        omega_residual,
    })
}

/// Checks the group relations. For kappa = -1 the inverse-free form
/// `S* conj(T) S T* = 1` is measured, which also certifies invertibility.
pub fn group_membership(
    t: &ComplexMatrix,
    d: usize,
) -> Result<MembershipReport, LinalgError> {
    if !t.is_square() {
        return Err(LinalgError::NotSquare {
            rows: t.rows(),
            cols: t.cols(),
        });
    }
    let ops = symmetry_ops(d);
    let s = extend(&ops.sigma.matrix, t.rows())?;
    let scale = t.norm().max(1.0);
    let conjugated = &(&s.adjoint() * &t.conj()) * &s;
    let sigma_residual = if kappa(d) == 1 {
        conjugated.dist(t) / scale
    } else {
        let product = &conjugated * &t.adjoint();
        product.dist(&ComplexMatrix::identity(t.rows())) / scale
    };
    let omega_residual = match &ops.omega {
        Some(w) => {
            let we = extend(&w.matrix, t.rows())?;
            let lhs = &(&t.adjoint() * &we) * t;
            Some(lhs.dist(&we) / scale)
        }
        None => None,
    };
    let member = sigma_residual <= MEMBERSHIP_TOL
        && omega_residual.map_or(true, |r| r <= MEMBERSHIP_TOL);
    Ok(MembershipReport {
        member,
        sigma_residual,
        omega_residual,
    })
}

pub fn in_algebra(a: &ComplexMatrix, d: usize) -> Result<bool, LinalgError> {
    Ok(algebra_membership(a, d)?.member)
}

pub fn in_group(t: &ComplexMatrix, d: usize) -> Result<bool, LinalgError> {
    Ok(group_membership(t, d)?.member)
}

/// Exponential of an algebra member, a group member by construction.
pub fn exp_member(a: &ComplexMatrix, d: usize) -> Result<ComplexMatrix, LinalgError> {
    let report = algebra_membership(a, d)?;
    if !report.member {
        return Err(structural(format!(
            "matrix is not an algebra member (residual {:.3e})",
            report.sigma_residual.max(report.omega_residual.unwrap_or(0.0))
        )));
    }
    Ok(expm(a))
}

/// Projects an arbitrary matrix onto the algebra by averaging with the two
/// defining involutions; they commute, so the order is immaterial.
pub fn project_to_algebra(
    x: &ComplexMatrix,
    d: usize,
) -> Result<ComplexMatrix, LinalgError> {
    let ops = symmetry_ops(d);
    let s = extend(&ops.sigma.matrix, x.rows())?;
    let k = kappa(d);
    let phi = kappa_flip(&(&(&s.adjoint() * &x.conj()) * &s), k);
    let mut out = (x + &phi).scale_re(0.5);
    if let Some(w) = &ops.omega {
        let we = extend(&w.matrix, x.rows())?;
        let psi = (&(&we.adjoint() * &out) * &we).adjoint().scale_re(-1.0);
        out = (&out + &psi).scale_re(0.5);
    }
    Ok(out)
}

/// The extra real unitary that cuts the odd-d algebra out of the even one
/// above it: i times the closing generator one dimension up.
///
/// # Panics
/// Panics for even d, where no such reduction is defined.
pub fn omega_hat(d: usize) -> ComplexMatrix {
    assert!(d % 2 == 1, "the reduction operator exists for odd d only");
    let up = representation(d + 1);
    up.gamma(d + 1).scale(c64(0.0, 1.0))
}

/// Diagonal sign string on the representation factor of an odd-d space.
fn inner_sign_string(d: usize) -> ComplexMatrix {
    let mut out = ComplexMatrix::identity(1);
    for _ in 0..(d - 1) / 2 {
        out = out.kron(&linalg_core::sigma3());
    }
    out
}

/// Embeds an odd-d algebra member into the algebra one dimension up, on a
/// space of twice the size. Lie brackets are preserved; together with the
/// relation `W^* A W^ = -A*` for the operator of [`omega_hat`], the image
/// characterizes the smaller algebra inside the larger one.
pub fn embed_half_dimension(
    a: &ComplexMatrix,
    d: usize,
) -> Result<ComplexMatrix, LinalgError> {
    assert!(d % 2 == 1, "embedding starts from odd d");
    assert!(d + 1 <= crate::rep::MAX_REP_GENERATORS);
    let n = a.rows();
    if !a.is_square() || n % rep_dim(d) != 0 {
        return Err(structural(format!(
            "matrix size {} is not a multiple of the representation size {}",
            n,
            rep_dim(d)
        )));
    }
    let sign_string = extend(&inner_sign_string(d), n)?;
    let reflected = &(&sign_string * &a.adjoint()) * &sign_string;
    let e11 = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]);
    let e22 = ComplexMatrix::from_real_rows(&[&[0.0, 0.0], &[0.0, 1.0]]);
    let m = &a.kron(&e11) - &reflected.kron(&e22);
    let b = ComplexMatrix::identity(n).kron(&cayley());
    Ok(&(&b * &m) * &b.adjoint())
}

/// Inverse of [`embed_half_dimension`]: recovers the smaller-algebra matrix
/// and reports how far the input was from the embedded subspace (relative
/// Frobenius distance to the re-embedded result).
pub fn restrict_half_dimension(
    atilde: &ComplexMatrix,
    d: usize,
) -> Result<(ComplexMatrix, f64), LinalgError> {
    assert!(d % 2 == 1, "restriction lands on odd d");
    let total = atilde.rows();
    if !atilde.is_square() || total % 2 != 0 {
        return Err(structural(format!("matrix size {} is not even", total)));
    }
    let n = total / 2;
    if n % rep_dim(d) != 0 {
        return Err(structural(format!(
            "restricted size {} is not a multiple of the representation size {}",
            n,
            rep_dim(d)
        )));
    }
    let b = ComplexMatrix::identity(n).kron(&cayley());
    let m = &(&b.adjoint() * atilde) * &b;
    let a = ComplexMatrix::from_fn(n, n, |i, j| m[(2 * i, 2 * j)]);
    let recon = embed_half_dimension(&a, d)?;
    let residual = atilde.dist(&recon) / atilde.norm().max(1.0);
    Ok((a, residual))
}

/// Label of the symmetric-space family the d-th algebra belongs to,
/// period eight.
pub fn cartan_label(d: usize) -> &'static str {
    match d % 8 {
        1 => "AI",
        2 => "CI",
        3 => "C",
        4 => "CII",
        5 => "AII",
        6 => "DIII",
        7 => "D",
        _ => "BDI",
    }
}

/// The classical matrix group the d-th family stabilizes to, period eight.
pub fn classical_group_name(d: usize) -> &'static str {
    match d % 8 {
        1 => "Gl(n,R)",
        2 => "Sp(n,R)",
        3 => "Sp(n,C)",
        4 => "Sp(2n,2n)",
        5 => "U*(2n)",
        6 => "SO*(2n)",
        7 => "O(n,C)",
        _ => "O(n,n)",
    }
}
