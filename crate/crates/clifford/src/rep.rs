//! Unitary matrix representation of the signed monomial group.
//!
//! The representation alternates reality: odd-indexed generator images are
//! real, even-indexed ones purely imaginary. It is built from Pauli words,
//!
//! ```text
//! G_{2j+1} = s3^{(j)} (x) s1 (x) 1...   G_{2j} = s3^{(j-1)} (x) s2 (x) 1...
//! ```
//!
//! with the one exception that for odd d >= 3 the last generator is the full
//! s3 string. All entries lie in {0, +-1, +-i}, every row and column holds a
//! single nonzero, and products of such monomial matrices are computed
//! without rounding, so representation identities hold exactly in f64.

use std::sync::OnceLock;

use linalg_core::{c64, sigma1, sigma2, sigma3, ComplexMatrix};

use crate::group::{kappa, CliffordElement};

/// Largest number of generators the dense representation supports (64x64).
pub const MAX_REP_GENERATORS: usize = 12;

/// Dimension of the representation: `2^{floor(d/2)}`, except that a single
/// generator cannot act irreducibly on one dimension with the required
/// reality, so d = 1 is doubled to dimension 2.
pub fn rep_dim(d: usize) -> usize {
    assert!((1..=MAX_REP_GENERATORS).contains(&d), "d = {} out of range", d);
    if d == 1 {
        2
    } else {
        1 << (d / 2)
    }
}

/// The represented generators for a fixed number d of them.
pub struct GammaRep {
    pub d: usize,
    pub dim: usize,
    /// `(-1)^{floor(d/2)}`, the sign threading every intertwining relation.
    pub kappa: i8,
    /// True for the doubled d = 1 case, where the action is reducible.
    pub doubled: bool,
    gammas: Vec<ComplexMatrix>,
}

impl GammaRep {
    pub fn new(d: usize) -> Self {
        let dim = rep_dim(d);
        let factors = dim.trailing_zeros() as usize;
        let gammas = (1..=d).map(|n| build_generator(d, n, factors)).collect();
        GammaRep {
            d,
            dim,
            kappa: kappa(d),
            doubled: d == 1,
            gammas,
        }
    }

    /// Image of the n-th generator, 1-indexed.
    pub fn gamma(&self, n: usize) -> &ComplexMatrix {
        assert!((1..=self.d).contains(&n), "generator {} of {}", n, self.d);
        &self.gammas[n - 1]
    }

    /// Image of an arbitrary group element: the signed ascending product of
    /// the generator images. Exact, since every factor is monomial.
    pub fn represent(&self, g: CliffordElement) -> ComplexMatrix {
        assert_eq!(g.d, self.d, "element dimension does not match representation");
        let mut out = ComplexMatrix::identity(self.dim).scale(c64(g.sign as f64, 0.0));
        let mut m = g.mask;
        while m != 0 {
            let n = m.trailing_zeros() as usize + 1;
            out = &out * self.gamma(n);
            m &= m - 1;
        }
        out
    }
}

fn build_generator(d: usize, n: usize, factors: usize) -> ComplexMatrix {
    let mut word: Vec<ComplexMatrix> = Vec::with_capacity(factors);
    if n % 2 == 1 && n == d && d >= 3 {
        // closing generator of an odd-sized family: the full diagonal string
        for _ in 0..factors {
            word.push(sigma3());
        }
    } else if n % 2 == 1 {
        let j = (n - 1) / 2;
        for _ in 0..j {
            word.push(sigma3());
        }
        word.push(sigma1());
        for _ in j + 1..factors {
            word.push(ComplexMatrix::identity(2));
        }
    } else {
        let j = n / 2;
        for _ in 0..j - 1 {
            word.push(sigma3());
        }
        word.push(sigma2());
        for _ in j..factors {
            word.push(ComplexMatrix::identity(2));
        }
    }
    word.into_iter()
        .reduce(|acc, f| acc.kron(&f))
        .expect("at least one factor")
}

/// Shared read-only representations, built once and reused; with at most
/// [`MAX_REP_GENERATORS`] generators the whole family is small.
pub fn representation(d: usize) -> &'static GammaRep {
    static CACHE: OnceLock<Vec<GammaRep>> = OnceLock::new();
    assert!((1..=MAX_REP_GENERATORS).contains(&d), "d = {} out of range", d);
    let all = CACHE.get_or_init(|| (1..=MAX_REP_GENERATORS).map(GammaRep::new).collect());
    &all[d - 1]
}
