//! The tenfold symmetry classes and their strong invariant groups.
//!
//! A Hamiltonian falls into one of ten classes according to which of the
//! three fundamental symmetries it carries: time reversal (TRS), particle-
//! hole (PHS) and chiral. The two complex classes carry no antiunitary
//! symmetry; the eight real classes are labelled by a row index j mod 8 and
//! ordered so that the strong invariant in dimension d depends only on
//! d - j mod 8.

use crate::tables::IndexGroup;

/// Cartan-Altland-Zirnbauer label.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CazLabel {
    A,
    AIII,
    AI,
    BDI,
    D,
    DIII,
    AII,
    CII,
    C,
    CI,
}

impl CazLabel {
    pub fn name(self) -> &'static str {
        match self {
            CazLabel::A => "A",
            CazLabel::AIII => "AIII",
            CazLabel::AI => "AI",
            CazLabel::BDI => "BDI",
            CazLabel::D => "D",
            CazLabel::DIII => "DIII",
            CazLabel::AII => "AII",
            CazLabel::CII => "CII",
            CazLabel::C => "C",
            CazLabel::CI => "CI",
        }
    }
}

/// Presence and square of an antiunitary symmetry.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SignTag {
    Plus,
    Minus,
    Absent,
}

impl SignTag {
    pub fn present(self) -> bool {
        !matches!(self, SignTag::Absent)
    }

    pub fn sign(self) -> Option<i8> {
        match self {
            SignTag::Plus => Some(1),
            SignTag::Minus => Some(-1),
            SignTag::Absent => None,
        }
    }
}

/// Row index: the complex classes sit outside the eightfold real cycle.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClassIndex {
    /// 0 for no symmetry at all, 1 for a lone chiral symmetry.
    Complex(u8),
    /// j mod 8 for the eight real classes.
    Real(u8),
}

/// One of the ten symmetry classes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SymmetryClass {
    pub j: ClassIndex,
    pub caz: CazLabel,
    pub trs_sign: SignTag,
    pub phs_sign: SignTag,
}

/// (j, caz, trs, phs) for the eight real rows, in row order.
const REAL_ROWS: [(u8, CazLabel, SignTag, SignTag); 8] = [
    (0, CazLabel::AI, SignTag::Plus, SignTag::Absent),
    (1, CazLabel::BDI, SignTag::Plus, SignTag::Plus),
    (2, CazLabel::D, SignTag::Absent, SignTag::Plus),
    (3, CazLabel::DIII, SignTag::Minus, SignTag::Plus),
    (4, CazLabel::AII, SignTag::Minus, SignTag::Absent),
    (5, CazLabel::CII, SignTag::Minus, SignTag::Minus),
    (6, CazLabel::C, SignTag::Absent, SignTag::Minus),
    (7, CazLabel::CI, SignTag::Plus, SignTag::Minus),
];

impl SymmetryClass {
    /// The real class in row j mod 8.
    pub fn real(j: usize) -> Self {
        let (j, caz, trs, phs) = REAL_ROWS[j % 8];
        SymmetryClass {
            j: ClassIndex::Real(j),
            caz,
            trs_sign: trs,
            phs_sign: phs,
        }
    }

    /// No symmetry at all.
    pub fn complex_plain() -> Self {
        SymmetryClass {
            j: ClassIndex::Complex(0),
            caz: CazLabel::A,
            trs_sign: SignTag::Absent,
            phs_sign: SignTag::Absent,
        }
    }

    /// A lone chiral symmetry.
    pub fn complex_chiral() -> Self {
        SymmetryClass {
            j: ClassIndex::Complex(1),
            caz: CazLabel::AIII,
            trs_sign: SignTag::Absent,
            phs_sign: SignTag::Absent,
        }
    }

    /// The class determined by which antiunitary symmetries are present and
    /// their squares. `has_chiral` only disambiguates A from AIII when both
    /// antiunitary symmetries are absent.
    pub fn from_signs(trs: SignTag, phs: SignTag, has_chiral: bool) -> Self {
        if !trs.present() && !phs.present() {
            return if has_chiral {
                Self::complex_chiral()
            } else {
                Self::complex_plain()
            };
        }
        for (j, _, t, p) in REAL_ROWS {
            if t == trs && p == phs {
                return Self::real(j as usize);
            }
        }
        unreachable!("every sign combination with a present symmetry is a real row");
    }

    /// True when a chiral symmetry is present (both antiunitary symmetries,
    /// or the AIII tag).
    pub fn has_chiral(&self) -> bool {
        (self.trs_sign.present() && self.phs_sign.present())
            || matches!(
                self.j,
                ClassIndex::Complex(1)
            )
    }

    /// Sign of the square of the chiral operator built as the product of the
    /// ordered symmetry pair, for the four rows that have one.
    pub fn chiral_square(&self) -> Option<i8> {
        match self.j {
            ClassIndex::Real(1) | ClassIndex::Real(5) => Some(1),
            ClassIndex::Real(3) | ClassIndex::Real(7) => Some(-1),
            _ => None,
        }
    }

    /// The strong invariant group of this class in spatial dimension d
    /// (reduced mod 8, with d = 0 on the same footing as d = 8).
    pub fn strong_invariant(&self, d: usize) -> IndexGroup {
        match self.j {
            ClassIndex::Complex(0) => {
                if d % 2 == 0 {
                    IndexGroup::Integers
                } else {
                    IndexGroup::Trivial
                }
            }
            ClassIndex::Complex(_) => {
                if d % 2 == 1 {
                    IndexGroup::Integers
                } else {
                    IndexGroup::Trivial
                }
            }
            // The eightfold pattern: Z on the diagonal, two trailing Z2
            // diagonals, 2Z four steps off, nothing elsewhere.
            ClassIndex::Real(j) => match (d + 8 - j as usize) % 8 {
                0 => IndexGroup::Integers,
                6 | 7 => IndexGroup::Parity,
                4 => IndexGroup::EvenIntegers,
                _ => IndexGroup::Trivial,
            },
        }
    }
}
