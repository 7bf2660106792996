//! Band-degeneracy consequences of projective symmetry algebras.
//!
//! When the two elementary translations anticommute (a pi-flux factor
//! system), the k-local symmetries of a Bloch Hamiltonian generate a real
//! Clifford algebra: parity-time and its i-multiple, plus one suitably
//! phased translation per direction. Counting generators that square to -1
//! and +1 classifies the algebra up to Bott periodicity, and the dimension of
//! its irreducible representation is a lower bound on the band degeneracy at
//! every momentum.
//!
//! The module has three layers:
//! - exact signature and irreducible-dimension bookkeeping
//!   ([`signature`], [`classify_clifford`], [`minimal_bands`]);
//! - concrete momentum-space representations over Gaussian integers with
//!   every defining relation checked by exact composition
//!   ([`two_band_rep`], [`four_band_rep`], [`check_algebra`]);
//! - numerical witnesses: determinant winding numbers and the eigenvalue
//!   multiplicities of symmetrized random Hamiltonians
//!   ([`winding_number`], [`degeneracy_check`]).

mod degeneracy;
mod gauss;
mod momentum;

pub use degeneracy::{
    degeneracy_check, degeneracy_check_with_closure, symmetrize, symmetrizer_closure,
    DegeneracyReport,
};
pub use gauss::{GaussInt, GaussMat};
pub use momentum::{
    algebra_holds, check_algebra, compose, four_band_rep, two_band_rep, winding_number, BandRep,
    MomentumOperator, PtAction, RelationCheck,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliffordError {
    #[error("symmetry signs must be +1 or -1, got {0}")]
    InvalidSign(i8),
    #[error("q components must be 0 or 1, got {0}")]
    InvalidQ(u8),
    #[error("momentum direction must be 0 or 1, got {0}")]
    InvalidDirection(usize),
    #[error("no shipped band construction for s_t={s_t}, s_p={s_p}, q=({qx},{qy})")]
    NoShippedConstruction { s_t: i8, s_p: i8, qx: u8, qy: u8 },
    #[error("winding is defined only for unitary operators that preserve k")]
    WindingUndefined,
    #[error("winding grid of {0} points is too coarse (need at least 8)")]
    GridTooCoarse(usize),
    #[error("determinant vanished at loop point {index}")]
    SingularLoopPoint { index: usize },
    #[error("operator family does not close along direction {direction}: endpoint mismatch {mismatch:.3e}")]
    NotPeriodic { direction: usize, mismatch: f64 },
    #[error("accumulated determinant phase is {residual:.3e} rad away from a whole number of turns")]
    WindingAmbiguous { residual: f64 },
    #[error("eigenvalue clustering stayed ambiguous after {attempts} resamples")]
    DegeneracyUnresolved { attempts: usize },
}

/// The symmetry data of one projective class: the squares of time reversal
/// and parity, and the signs picked up when parity passes a half translation.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SymmetrySetting {
    pub s_t: i8,
    pub s_p: i8,
    pub q: [u8; 2],
}

impl SymmetrySetting {
    pub fn new(s_t: i8, s_p: i8, q: [u8; 2]) -> Result<Self, CliffordError> {
        let s = SymmetrySetting { s_t, s_p, q };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), CliffordError> {
        for s in [self.s_t, self.s_p] {
            if s != 1 && s != -1 {
                return Err(CliffordError::InvalidSign(s));
            }
        }
        for q in self.q {
            if q > 1 {
                return Err(CliffordError::InvalidQ(q));
            }
        }
        Ok(())
    }
}

/// Signature (n, m) of the real Clifford algebra generated by the k-local
/// symmetries: n generators square to -1 and m to +1.
///
/// The generating set is {PT, iPT, i^{1-q_x} L_x, i^{1-q_y} L_y}. Both PT and
/// iPT square to s_p s_t, and the phased translation along direction i
/// squares to (-1)^{1-q_i}.
pub fn signature(setting: &SymmetrySetting) -> Result<(usize, usize), CliffordError> {
    setting.validate()?;
    let product = setting.s_t * setting.s_p;
    let qx = setting.q[0] as usize;
    let qy = setting.q[1] as usize;
    let neg = if product < 0 { 2 } else { 0 } + (1 - qx) + (1 - qy);
    let pos = if product > 0 { 2 } else { 0 } + qx + qy;
    Ok((neg, pos))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum DivisionAlgebra {
    R,
    C,
    H,
}

impl DivisionAlgebra {
    pub fn real_dim(&self) -> usize {
        match self {
            DivisionAlgebra::R => 1,
            DivisionAlgebra::C => 2,
            DivisionAlgebra::H => 4,
        }
    }
}

impl std::fmt::Display for DivisionAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DivisionAlgebra::R => write!(f, "R"),
            DivisionAlgebra::C => write!(f, "C"),
            DivisionAlgebra::H => write!(f, "H"),
        }
    }
}

/// Structure of the real Clifford algebra Cl(neg, pos): it is a sum of
/// `blocks` copies of a matrix algebra over `division`, and its irreducible
/// representation has real dimension `real_dim`. A complex Bloch bundle needs
/// at least `band_degeneracy` bands to carry it.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CliffordIrrep {
    pub neg: usize,
    pub pos: usize,
    pub division: DivisionAlgebra,
    pub blocks: usize,
    pub real_dim: usize,
    pub band_degeneracy: usize,
}

/// Classifies Cl(neg, pos) by the eightfold periodicity of pos - neg.
pub fn classify_clifford(neg: usize, pos: usize) -> CliffordIrrep {
    assert!(neg + pos < 64, "signature too large");
    let t = (pos as i64 - neg as i64).rem_euclid(8);
    let (division, blocks) = match t {
        0 | 2 => (DivisionAlgebra::R, 1),
        1 => (DivisionAlgebra::R, 2),
        3 | 7 => (DivisionAlgebra::C, 1),
        4 | 6 => (DivisionAlgebra::H, 1),
        5 => (DivisionAlgebra::H, 2),
        _ => unreachable!(),
    };
    // total real dimension 2^{neg+pos} = blocks * k^2 * dim(division)
    let d = division.real_dim();
    let total: u128 = 1u128 << (neg + pos);
    assert_eq!(total % (blocks * d) as u128, 0);
    let k2 = total / (blocks * d) as u128;
    let k = (k2 as f64).sqrt().round() as u128;
    assert_eq!(k * k, k2, "matrix size must be a perfect square");
    let real_dim = (k as usize) * d;
    CliffordIrrep {
        neg,
        pos,
        division,
        blocks,
        real_dim,
        band_degeneracy: std::cmp::max(1, real_dim / 2),
    }
}

/// Minimal number of complex bands forced by the symmetry setting.
pub fn minimal_bands(setting: &SymmetrySetting) -> Result<usize, CliffordError> {
    let (neg, pos) = signature(setting)?;
    Ok(classify_clifford(neg, pos).band_degeneracy)
}
