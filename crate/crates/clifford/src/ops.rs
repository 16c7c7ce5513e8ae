//! Real symmetry operators attached to the represented monomial group.
//!
//! The even-indexed and full volume monomials represent as purely real or
//! purely imaginary monomial matrices; fixed powers of `i` turn them into
//! real orthogonal operators:
//!
//! ```text
//! S  = i^{floor(d/2)} pi(g2 g4 ...)        (all d)
//! W  = (-i)^{d/2}     pi(g1 g2 ... gd)     (even d)
//! S^ = W S                                 (even d)
//! ```
//!
//! These are the reference operators every symmetry class reduction in the
//! workspace is normalized against. All three are exact signed permutation
//! matrices, so the algebraic identities below hold with zero floating-point
//! error.

use linalg_core::{c64, ComplexMatrix, C64};

use crate::error::CliffordError;
use crate::group::{kappa, omega_element, sigma_element};
use crate::rep::GammaRep;

/// What part a real symmetry operator plays.
///
/// The first three are the reference operators built from the monomial group;
/// the physical roles tag how an operator acts on a Hamiltonian (conjugation
/// with or without complex conjugation, sign flip or not).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OperatorRole {
    /// Intertwines the even-index generator flip; exists for every d.
    Sigma,
    /// Negates every generator under conjugation; even d only.
    Omega,
    /// Intertwines the odd-index generator flip; even d only.
    SigmaHat,
    /// S* conj(H) S = H.
    TimeReversal,
    /// S* conj(H) S = -H.
    ParticleHole,
    /// R* H R = -H, no complex conjugation involved.
    Chiral,
    /// No declared action; carries only realness and the square sign.
    Generic,
}

impl OperatorRole {
    pub fn name(self) -> &'static str {
        match self {
            OperatorRole::Sigma => "sigma",
            OperatorRole::Omega => "omega",
            OperatorRole::SigmaHat => "sigma-hat",
            OperatorRole::TimeReversal => "time-reversal",
            OperatorRole::ParticleHole => "particle-hole",
            OperatorRole::Chiral => "chiral",
            OperatorRole::Generic => "generic",
        }
    }
}

/// A real unitary operator squaring to a sign, tagged with its role.
#[derive(Clone, Debug)]
pub struct SymmetryOperator {
    pub matrix: ComplexMatrix,
    /// Sign in `matrix * matrix = parity * identity`.
    pub parity: i8,
    pub role: OperatorRole,
}

/// Validation slack for user-supplied operators; reference operators from the
/// monomial group are checked exactly instead.
const OPERATOR_TOL: f64 = 1e-10;

impl SymmetryOperator {
    /// Wraps a user-supplied matrix after verifying it is real, unitary and
    /// squares to a sign, all within a small tolerance. Matrices assembled
    /// numerically (rotated bases, products of several operators) pass; use
    /// the exact reference constructors where exactness is available.
    pub fn new(matrix: ComplexMatrix, role: OperatorRole) -> Result<Self, CliffordError> {
        if !matrix.is_square() {
            return Err(CliffordError::NotASymmetryOperator {
                what: "matrix is not square",
                residual: f64::INFINITY,
            });
        }
        let n = matrix.rows();
        let scale = (n as f64).sqrt();
        let real_res = matrix.imag_norm();
        if real_res > OPERATOR_TOL {
            return Err(CliffordError::NotASymmetryOperator {
                what: "matrix is not real",
                residual: real_res,
            });
        }
        let unitary_res = matrix.unitary_residual();
        if unitary_res > OPERATOR_TOL * scale {
            return Err(CliffordError::NotASymmetryOperator {
                what: "matrix is not unitary",
                residual: unitary_res,
            });
        }
        let one = ComplexMatrix::identity(n);
        let sq = &matrix * &matrix;
        let plus = sq.dist(&one);
        let minus = sq.dist(&one.scale_re(-1.0));
        let (parity, res) = if plus <= minus { (1, plus) } else { (-1, minus) };
        if res > OPERATOR_TOL * scale {
            return Err(CliffordError::NotASymmetryOperator {
                what: "matrix does not square to a sign",
                residual: res,
            });
        }
        Ok(SymmetryOperator { matrix, parity, role })
    }
    /// Wraps a Clifford-derived operator, checking realness and the square
    /// exactly (the inputs are signed permutation matrices, so any deviation
    /// at all is a construction bug).
    fn checked(matrix: ComplexMatrix, role: OperatorRole) -> Self {
        assert_eq!(
            matrix.imag_norm(),
            0.0,
            "{} operator must be exactly real",
            role.name()
        );
        let one = ComplexMatrix::identity(matrix.rows());
        let sq = &matrix * &matrix;
        let parity = if sq.dist(&one) == 0.0 {
            1
        } else {
            assert_eq!(
                sq.dist(&one.scale_re(-1.0)),
                0.0,
                "{} operator must square to a sign",
                role.name()
            );
            -1
        };
        SymmetryOperator { matrix, parity, role }
    }

    /// For an involution (`parity = +1`), the dimensions of the +1 and -1
    /// eigenspaces, read off the exact integer trace. `None` when the square
    /// is -1 and the eigenvalues are not real.
    pub fn eigenspace_split(&self) -> Option<(usize, usize)> {
        if self.parity != 1 {
            return None;
        }
        let n = self.matrix.rows() as i64;
        let tr = self.matrix.trace().re.round() as i64;
        Some((((n + tr) / 2) as usize, ((n - tr) / 2) as usize))
    }
}

/// The decorated operator triple for a fixed d.
///
/// `omega` and `sigma_hat` are `None` for odd d, where no real unitary
/// intertwines the full or odd-index flip (the obstruction is the centrality
/// of the volume monomial).
pub struct SymmetryOps {
    pub d: usize,
    pub kappa: i8,
    pub sigma: SymmetryOperator,
    pub omega: Option<SymmetryOperator>,
    pub sigma_hat: Option<SymmetryOperator>,
}

impl SymmetryOps {
    /// The generator-negating operator, or an error for odd d.
    pub fn require_omega(&self) -> Result<&SymmetryOperator, CliffordError> {
        self.omega.as_ref().ok_or(CliffordError::UndefinedForOddDimension {
            role: "omega",
            d: self.d,
        })
    }

    /// The odd-flip operator, or an error for odd d.
    pub fn require_sigma_hat(&self) -> Result<&SymmetryOperator, CliffordError> {
        self.sigma_hat
            .as_ref()
            .ok_or(CliffordError::UndefinedForOddDimension {
                role: "sigma-hat",
                d: self.d,
            })
    }
}

fn i_power(k: usize) -> C64 {
    match k % 4 {
        0 => c64(1.0, 0.0),
        1 => c64(0.0, 1.0),
        2 => c64(-1.0, 0.0),
        _ => c64(0.0, -1.0),
    }
}

/// Builds the operator triple in the representation of size
/// [`crate::rep::rep_dim`].
pub fn symmetry_ops(d: usize) -> SymmetryOps {
    let rep = GammaRep::new(d);
    let half = d / 2;
    let sigma = rep.represent(sigma_element(d)).scale(i_power(half));
    let (omega, sigma_hat) = if d % 2 == 0 {
        // (-i)^{d/2} = conj(i^{d/2})
        let omega = rep.represent(omega_element(d)).scale(i_power(half).conj());
        let hat = &omega * &sigma;
        (
            Some(SymmetryOperator::checked(omega, OperatorRole::Omega)),
            Some(SymmetryOperator::checked(hat, OperatorRole::SigmaHat)),
        )
    } else {
        (None, None)
    };
    SymmetryOps {
        d,
        kappa: kappa(d),
        sigma: SymmetryOperator::checked(sigma, OperatorRole::Sigma),
        omega,
        sigma_hat,
    }
}

/// Structure constants of the operator triple, resolved by `d mod 8`.
///
/// `sigma_sq` is the sign in `S^2 = +-1`; `omega_commutes` / `hat_commutes` /
/// `omega_hat_commutes` record whether the corresponding pair commutes
/// (`true`) or anticommutes; `hat_sq` is the sign of the square of the third
/// operator. The even-d-only entries are `None` for odd d.
pub struct OpRelations {
    pub sigma_sq: i8,
    pub kappa: i8,
    pub omega_commutes: Option<bool>,
    pub hat_sq: Option<i8>,
    pub hat_commutes: Option<bool>,
    pub omega_hat_commutes: Option<bool>,
}

/// The period-eight table of relations the operators satisfy.
pub fn expected_relations(d: usize) -> OpRelations {
    let m = d % 8;
    let sigma_sq = match m {
        1 | 6 | 7 | 0 => 1,
        _ => -1,
    };
    let even = d % 2 == 0;
    let commutes = if even { Some(m == 4 || m == 0) } else { None };
    let hat_sq = if even {
        Some(match m {
            2 | 0 => 1,
            _ => -1,
        })
    } else {
        None
    };
    OpRelations {
        sigma_sq,
        kappa: kappa(d),
        omega_commutes: commutes,
        hat_sq,
        hat_commutes: commutes,
        omega_hat_commutes: commutes,
    }
}
