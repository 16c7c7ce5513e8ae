//! Dense complex matrices in row-major storage.
//!
//! `ComplexMatrix` is the universal operator carrier for the whole workspace:
//! Hamiltonians, projections, unitaries, symmetry operators and assembled
//! index pairings are all plain dense matrices over `Complex64`. The type is
//! immutable in spirit: every operation returns a fresh matrix, which keeps
//! all higher-level routines pure and trivially safe to share across worker
//! threads.

use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

/// Complex scalar used throughout the workspace.
pub type C64 = Complex64;

/// Shorthand for `Complex64::new`.
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        ComplexMatrix {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Diagonal matrix from complex entries.
    pub fn diag(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in entries.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn diag_real(entries: &[f64]) -> Self {
        let v: Vec<C64> = entries.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::diag(&v)
    }

    /// Builds a matrix from a closure over (row, col).
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from nested row slices.
    pub fn from_rows(rows: &[&[C64]]) -> Self {
        let r = rows.len();
        assert!(r > 0, "need at least one row");
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    /// Builds a matrix from nested real row slices.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        assert!(r > 0, "need at least one row");
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Raw row-major entries.
    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    /// Conjugate transpose A*.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Transpose Aᵗ.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Entrywise complex conjugate Ā.
    pub fn conj(&self) -> Self {
        let mut m = self.clone();
        for v in m.data.iter_mut() {
            *v = v.conj();
        }
        m
    }

    /// Scalar multiple.
    pub fn scale(&self, s: C64) -> Self {
        let mut m = self.clone();
        for v in m.data.iter_mut() {
            *v *= s;
        }
        m
    }

    /// Real scalar multiple.
    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Frobenius distance ‖A − B‖.
    pub fn dist(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Hermitian asymmetry ‖A − A*‖.
    pub fn hermitian_residual(&self) -> f64 {
        self.dist(&self.adjoint())
    }

    /// Exact Hermitian average ½(A + A*).
    pub fn hermitian_part(&self) -> Self {
        assert!(self.is_square());
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()).scale(0.5)
        })
    }

    /// Largest imaginary part over all entries; zero for real matrices.
    pub fn imag_norm(&self) -> f64 {
        self.data.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }

    /// Kronecker product A ⊗ B.
    pub fn kron(&self, other: &Self) -> Self {
        let (ra, ca) = (self.rows, self.cols);
        let (rb, cb) = (other.rows, other.cols);
        Self::from_fn(ra * rb, ca * cb, |i, j| {
            self[(i / rb, j / cb)] * other[(i % rb, j % cb)]
        })
    }

    /// Block direct sum A ⊕ B.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)];
            }
        }
        m
    }

    /// Contiguous block copy starting at (row0, col0).
    pub fn block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        assert!(row0 + rows <= self.rows && col0 + cols <= self.cols);
        Self::from_fn(rows, cols, |i, j| self[(row0 + i, col0 + j)])
    }

    /// Writes `block` into self starting at (row0, col0).
    pub fn set_block(&mut self, row0: usize, col0: usize, block: &Self) {
        assert!(row0 + block.rows <= self.rows && col0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(row0 + i, col0 + j)] = block[(i, j)];
            }
        }
    }

    /// Column `j` as a vector.
    pub fn col(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Matrix with the selected columns, in the given order.
    pub fn select_cols(&self, indices: &[usize]) -> Self {
        Self::from_fn(self.rows, indices.len(), |i, j| self[(i, indices[j])])
    }

    /// A · v for a column vector v.
    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mat-vec product");
        let mut out = vec![C64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let mut acc = C64::new(0.0, 0.0);
            for (a, b) in row.iter().zip(v) {
                acc += a * b;
            }
            out[i] = acc;
        }
        out
    }

    /// True iff ‖A − B‖ ≤ tol.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.dist(other) <= tol
    }

    /// Deviation from unitarity ‖A*A − 1‖.
    pub fn unitary_residual(&self) -> f64 {
        (&self.adjoint() * self).dist(&Self::identity(self.cols))
    }

    /// Deviation from being a projection, max(‖A² − A‖, ‖A − A*‖).
    pub fn projection_residual(&self) -> f64 {
        let idem = (self * self).dist(self);
        idem.max(self.hermitian_residual())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in +");
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
        m
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in -");
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        m
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        // ikj loop order: stream over rhs rows for cache friendliness.
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let rrow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in orow.iter_mut().zip(rrow) {
                    *o += a * b;
                }
            }
        }
        out
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let v = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", v.re, v.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Pauli matrix σ₁.
pub fn sigma1() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        &[c64(0.0, 0.0), c64(1.0, 0.0)],
        &[c64(1.0, 0.0), c64(0.0, 0.0)],
    ])
}

/// Pauli matrix σ₂.
pub fn sigma2() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        &[c64(0.0, 0.0), c64(0.0, -1.0)],
        &[c64(0.0, 1.0), c64(0.0, 0.0)],
    ])
}

/// Pauli matrix σ₃.
pub fn sigma3() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        &[c64(1.0, 0.0), c64(0.0, 0.0)],
        &[c64(0.0, 0.0), c64(-1.0, 0.0)],
    ])
}

/// The real rotation iσ₂ = [[0, 1], [−1, 0]].
pub fn i_sigma2() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        &[c64(0.0, 0.0), c64(1.0, 0.0)],
        &[c64(-1.0, 0.0), c64(0.0, 0.0)],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjoint_is_involutive() {
        let a = ComplexMatrix::from_rows(&[
            &[c64(1.0, 2.0), c64(3.0, -1.0)],
            &[c64(0.0, 0.5), c64(-2.0, 0.0)],
        ]);
        assert_eq!(a.adjoint().adjoint(), a);
        assert_eq!(a.conj().conj(), a);
        // Aᵗ = conj(A*) exactly for exact entries.
        assert_eq!(a.transpose(), a.adjoint().conj());
    }

    #[test]
    fn pauli_algebra() {
        let (s1, s2, s3) = (sigma1(), sigma2(), sigma3());
        // σ₁σ₂ = iσ₃
        assert!((&s1 * &s2).approx_eq(&s3.scale(c64(0.0, 1.0)), 1e-15));
        // σⱼ² = 1
        for s in [&s1, &s2, &s3] {
            assert!((s * s).approx_eq(&ComplexMatrix::identity(2), 0.0));
        }
        assert!(i_sigma2().approx_eq(&s2.scale(c64(0.0, 1.0)), 0.0));
    }

    #[test]
    fn kron_matches_block_structure() {
        let a = sigma3();
        let b = sigma1();
        let k = a.kron(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k[(0, 1)], c64(1.0, 0.0));
        assert_eq!(k[(2, 3)], c64(-1.0, 0.0));
        assert_eq!(k[(0, 2)], c64(0.0, 0.0));
    }

    #[test]
    fn direct_sum_and_block_roundtrip() {
        let a = sigma1();
        let b = sigma2();
        let s = a.direct_sum(&b);
        assert!(s.block(0, 0, 2, 2).approx_eq(&a, 0.0));
        assert!(s.block(2, 2, 2, 2).approx_eq(&b, 0.0));
        assert_eq!(s[(0, 2)], c64(0.0, 0.0));
    }

    #[test]
    fn mul_vec_agrees_with_mul() {
        let a = ComplexMatrix::from_rows(&[
            &[c64(1.0, 1.0), c64(2.0, 0.0)],
            &[c64(0.0, -1.0), c64(1.0, 3.0)],
        ]);
        let v = vec![c64(0.5, 0.0), c64(0.0, 2.0)];
        let mut col = ComplexMatrix::zeros(2, 1);
        col[(0, 0)] = v[0];
        col[(1, 0)] = v[1];
        let prod = &a * &col;
        let mv = a.mul_vec(&v);
        assert!((prod[(0, 0)] - mv[0]).norm() < 1e-15);
        assert!((prod[(1, 0)] - mv[1]).norm() < 1e-15);
    }
}
