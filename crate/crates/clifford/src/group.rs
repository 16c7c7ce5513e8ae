//! Exact arithmetic in the finite group generated by anticommuting
//! involutions together with a central sign.
//!
//! Elements are signed square-free monomials $\pm\gamma_{n_1}\cdots\gamma_{n_k}$
//! with $n_1 < \dots < n_k$, encoded as a bitmask plus a sign. With $d$
//! generators the group has $2^{d+1}$ elements. Products count the
//! transpositions needed to merge two sorted monomials, so every result is
//! exact; no floating point enters at the group level.

use core::fmt;

/// Upper bound on the number of generators the bitmask encoding supports.
pub const MAX_GENERATORS: usize = 16;

/// Signed square-free monomial in the generators.
///
/// # Fields
/// - `d`: number of generators of the ambient group.
/// - `sign`: overall sign, `+1` or `-1`.
/// - `mask`: bit `n-1` is set when the n-th generator occurs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CliffordElement {
    pub d: usize,
    pub sign: i8,
    pub mask: u32,
}

impl CliffordElement {
    /// The identity element of the d-generator group.
    pub fn one(d: usize) -> Self {
        assert!(d <= MAX_GENERATORS, "d = {} out of range", d);
        CliffordElement { d, sign: 1, mask: 0 }
    }

    /// The central sign of the d-generator group.
    pub fn minus_one(d: usize) -> Self {
        CliffordElement::one(d).negated()
    }

    /// The n-th generator, 1-indexed.
    ///
    /// # Panics
    /// Panics when `n` is zero or exceeds `d`.
    pub fn generator(d: usize, n: usize) -> Self {
        assert!(d <= MAX_GENERATORS, "d = {} out of range", d);
        assert!(
            (1..=d).contains(&n),
            "generator index {} out of range for d = {}",
            n,
            d
        );
        CliffordElement {
            d,
            sign: 1,
            mask: 1 << (n - 1),
        }
    }

    /// Number of generators in the monomial.
    pub fn degree(self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_scalar(self) -> bool {
        self.mask == 0
    }

    pub fn negated(self) -> Self {
        CliffordElement {
            d: self.d,
            sign: -self.sign,
            mask: self.mask,
        }
    }

    /// Group product.
    ///
    /// The sign change counts the transpositions that merge the two ascending
    /// monomials into one; repeated generators then cancel in adjacent pairs
    /// since each squares to one, contributing no further sign.
    ///
    /// # Panics
    /// Panics when the factors live in groups of different dimension.
    pub fn mul(self, rhs: Self) -> Self {
        assert_eq!(
            self.d, rhs.d,
            "cannot multiply elements of different dimension"
        );
        let mut swaps = 0u32;
        let mut m = rhs.mask;
        while m != 0 {
            let j = m.trailing_zeros();
            if j + 1 < 32 {
                swaps += (self.mask >> (j + 1)).count_ones();
            }
            m &= m - 1;
        }
        let mut sign = self.sign * rhs.sign;
        if swaps % 2 == 1 {
            sign = -sign;
        }
        CliffordElement {
            d: self.d,
            sign,
            mask: self.mask ^ rhs.mask,
        }
    }

    /// Sign of the square: a degree-k monomial squares to $(-1)^{k(k-1)/2}$.
    pub fn square_sign(self) -> i8 {
        let k = self.degree();
        if (k * k.saturating_sub(1) / 2) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn inverse(self) -> Self {
        // g*g = square_sign, hence g^{-1} = square_sign * g
        if self.square_sign() == 1 {
            self
        } else {
            self.negated()
        }
    }

    pub fn commutes_with(self, other: Self) -> bool {
        self.mul(other) == other.mul(self)
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.sign >= 0 { "+" } else { "-" })?;
        if self.mask == 0 {
            return write!(f, "1");
        }
        let mut m = self.mask;
        while m != 0 {
            let n = m.trailing_zeros() + 1;
            write!(f, "g{}", n)?;
            m &= m - 1;
        }
        Ok(())
    }
}

/// Alternating sign $\kappa = (-1)^{\lfloor d/2 \rfloor}$ governing which of
/// the index-parity flips is inner.
pub fn kappa(d: usize) -> i8 {
    if (d / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Product of the even-indexed generators $\gamma_2\gamma_4\cdots$, up to d.
pub fn sigma_element(d: usize) -> CliffordElement {
    let mut mask = 0u32;
    let mut n = 2;
    while n <= d {
        mask |= 1 << (n - 1);
        n += 2;
    }
    CliffordElement { d, sign: 1, mask }
}

/// Full volume monomial $\gamma_1\gamma_2\cdots\gamma_d$.
pub fn omega_element(d: usize) -> CliffordElement {
    CliffordElement {
        d,
        sign: 1,
        mask: if d == 0 { 0 } else { (1u32 << d) - 1 },
    }
}

/// Product of the odd-indexed generators $\gamma_1\gamma_3\cdots$, up to d.
pub fn sigma_hat_element(d: usize) -> CliffordElement {
    let mut mask = 0u32;
    let mut n = 1;
    while n <= d {
        mask |= 1 << (n - 1);
        n += 2;
    }
    CliffordElement { d, sign: 1, mask }
}

/// All `2^{d+1}` group elements.
pub fn group_elements(d: usize) -> Vec<CliffordElement> {
    assert!(d <= MAX_GENERATORS);
    let mut out = Vec::with_capacity(2usize << d);
    for mask in 0..(1u32 << d) {
        out.push(CliffordElement { d, sign: 1, mask });
        out.push(CliffordElement { d, sign: -1, mask });
    }
    out
}

/// Conjugation `by * g * by^{-1}`.
pub fn conjugate(g: CliffordElement, by: CliffordElement) -> CliffordElement {
    by.mul(g).mul(by.inverse())
}

/// Elements commuting with the whole group: `{1,-1}` for even d and
/// `{1,-1,w,-w}` with the volume monomial w for odd d.
pub fn center(d: usize) -> Vec<CliffordElement> {
    group_elements(d)
        .into_iter()
        .filter(|&g| (1..=d).all(|n| g.commutes_with(CliffordElement::generator(d, n))))
        .collect()
}

/// The three sign involutions of the group.
///
/// All three fix the central `+1`/`-1` and rescale generators:
///
/// - `EvenFlip`: $\gamma_n \mapsto \kappa\,(-1)^{n+1}\gamma_n$, i.e. the
///   even-indexed generators change sign, modulated by the uniform sign
///   [`kappa`] that makes this map inner in every dimension.
/// - `FullFlip`: $\gamma_n \mapsto -\gamma_n$ (the grade involution).
/// - `OddFlip`: $\gamma_n \mapsto \kappa\,(-1)^{n}\gamma_n$, the composition
///   of the other two.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupInvolution {
    EvenFlip,
    FullFlip,
    OddFlip,
}

/// Applies one of the sign involutions to an element.
pub fn apply_involution(which: GroupInvolution, g: CliffordElement) -> CliffordElement {
    let d = g.d;
    let mut sign = g.sign;
    let mut m = g.mask;
    while m != 0 {
        let n = m.trailing_zeros() as usize + 1;
        let odd = n % 2 == 1;
        let factor = match which {
            GroupInvolution::EvenFlip => kappa(d) * if odd { 1 } else { -1 },
            GroupInvolution::FullFlip => -1,
            GroupInvolution::OddFlip => kappa(d) * if odd { -1 } else { 1 },
        };
        sign *= factor;
        m &= m - 1;
    }
    CliffordElement { d, sign, mask: g.mask }
}

/// Group element implementing an involution by conjugation, when one exists.
///
/// `EvenFlip` is inner for every d (via the even-indexed volume). `FullFlip`
/// and `OddFlip` are inner exactly for even d, via the full and odd-indexed
/// volumes; for odd d conjugation by any element fixes the central volume
/// monomial, which these flips negate, so no certificate exists.
pub fn adjoining_element(which: GroupInvolution, d: usize) -> Option<CliffordElement> {
    match which {
        GroupInvolution::EvenFlip => Some(sigma_element(d)),
        GroupInvolution::FullFlip => {
            if d % 2 == 0 {
                Some(omega_element(d))
            } else {
                None
            }
        }
        GroupInvolution::OddFlip => {
            if d % 2 == 0 {
                Some(sigma_hat_element(d))
            } else {
                None
            }
        }
    }
}

/// Brute-force search for a conjugating element over the whole group.
///
/// Returns the first element (in enumeration order) whose conjugation action
/// matches the involution on every generator, or `None` when no element of
/// the `2^{d+1}` candidates works.
pub fn exhaustive_adjoiner_search(
    which: GroupInvolution,
    d: usize,
) -> Option<CliffordElement> {
    group_elements(d).into_iter().find(|&eta| {
        (1..=d).all(|n| {
            let g = CliffordElement::generator(d, n);
            conjugate(g, eta) == apply_involution(which, g)
        })
    })
}

/// Outcome of [`adjoinability_certificate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdjoinabilityCertificate {
    /// Conjugation by this element realizes the involution; verified on all
    /// generators before being returned.
    Adjoiner(CliffordElement),
    /// No element realizes the involution; every one of `elements_checked`
    /// candidates was tried.
    Absent { elements_checked: usize },
}

/// Produces the canonical conjugating element, or an exhaustive proof that
/// none exists.
///
/// # Panics
/// The absence branch enumerates the whole group and is capped at d = 8.
pub fn adjoinability_certificate(
    which: GroupInvolution,
    d: usize,
) -> AdjoinabilityCertificate {
    if let Some(eta) = adjoining_element(which, d) {
        for n in 1..=d {
            let g = CliffordElement::generator(d, n);
            assert_eq!(
                conjugate(g, eta),
                apply_involution(which, g),
                "certificate {} fails on generator {}",
                eta,
                n
            );
        }
        AdjoinabilityCertificate::Adjoiner(eta)
    } else {
        assert!(d <= 8, "exhaustive absence search is capped at d = 8");
        assert_eq!(exhaustive_adjoiner_search(which, d), None);
        AdjoinabilityCertificate::Absent {
            elements_checked: group_elements(d).len(),
        }
    }
}
