//! Momentum-space symmetry operators with exact phase bookkeeping.
//!
//! An operator acts on Bloch states as
//!
//! ```text
//!   O = exp(i (phase_half . k) / 2) * M  [* K if antiunitary]  [* (k -> -k) if inverts_k]
//! ```
//!
//! with `M` a constant Gaussian-integer matrix. Half-integer phase vectors
//! appear because the generating translations move by half a lattice vector;
//! their squares are the unit translations `exp(i k_x)`, `exp(i k_y)`.

use super::gauss::{GaussInt, GaussMat};
use super::{CliffordError, SymmetrySetting};
use num_complex::Complex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentumOperator {
    pub matrix: GaussMat,
    /// Coefficients c with prefactor exp(i (c . k) / 2).
    pub phase_half: [i64; 2],
    pub antiunitary: bool,
    pub inverts_k: bool,
}

impl MomentumOperator {
    pub fn unitary(matrix: GaussMat, phase_half: [i64; 2]) -> Self {
        MomentumOperator {
            matrix,
            phase_half,
            antiunitary: false,
            inverts_k: false,
        }
    }

    pub fn identity(bands: usize) -> Self {
        Self::unitary(GaussMat::identity(bands), [0, 0])
    }

    /// Unit lattice translation along `direction`, exp(i k_dir).
    pub fn translation(bands: usize, direction: usize) -> Self {
        let mut phase = [0, 0];
        phase[direction] = 2;
        Self::unitary(GaussMat::identity(bands), phase)
    }

    pub fn bands(&self) -> usize {
        self.matrix.n()
    }

    /// Same operator with the matrix part scaled by a Gaussian unit.
    pub fn scale(&self, z: GaussInt) -> Self {
        MomentumOperator {
            matrix: self.matrix.scale(z),
            ..self.clone()
        }
    }
}

/// Operator product `after * before` (`before` acts first).
///
/// Moving the phase prefactor of `before` through the conjugation and the
/// momentum inversion of `after` flips its sign once for each flag.
pub fn compose(after: &MomentumOperator, before: &MomentumOperator) -> MomentumOperator {
    let mb = if after.antiunitary {
        before.matrix.conj()
    } else {
        before.matrix.clone()
    };
    let sign = if after.antiunitary ^ after.inverts_k {
        -1
    } else {
        1
    };
    MomentumOperator {
        matrix: after.matrix.mul(&mb),
        phase_half: [
            after.phase_half[0] + sign * before.phase_half[0],
            after.phase_half[1] + sign * before.phase_half[1],
        ],
        antiunitary: after.antiunitary ^ before.antiunitary,
        inverts_k: after.inverts_k ^ before.inverts_k,
    }
}

/// Parity and time reversal of a band representation, together with the signs
/// and commutation pattern they are meant to realize.
#[derive(Clone, Debug)]
pub struct PtAction {
    pub parity: MomentumOperator,
    pub time_reversal: MomentumOperator,
    pub setting: SymmetrySetting,
}

/// A concrete set of Bloch-space symmetry operators: the two half-lattice
/// translations, plus optionally parity and time reversal.
#[derive(Clone, Debug)]
pub struct BandRep {
    pub bands: usize,
    pub l_x: MomentumOperator,
    pub l_y: MomentumOperator,
    pub pt: Option<PtAction>,
}

/// Minimal representation of the anticommuting half-translation pair alone
/// (the pi-flux background), with no point symmetries.
pub fn two_band_rep() -> BandRep {
    BandRep {
        bands: 2,
        l_x: MomentumOperator::unitary(GaussMat::pauli(1), [1, 0]),
        l_y: MomentumOperator::unitary(GaussMat::pauli(2), [0, 1]),
        pt: None,
    }
}

/// Four-band model carrying parity and time reversal on top of the
/// anticommuting half translations. Shipped for s_t = s_p = +1, q = (1,1),
/// where the minimal band degeneracy is four.
pub fn four_band_rep(setting: &SymmetrySetting) -> Result<BandRep, CliffordError> {
    setting.validate()?;
    if (setting.s_t, setting.s_p, setting.q) != (1, 1, [1, 1]) {
        return Err(CliffordError::NoShippedConstruction {
            s_t: setting.s_t,
            s_p: setting.s_p,
            qx: setting.q[0],
            qy: setting.q[1],
        });
    }
    let tau0 = GaussMat::identity(2);
    let l_x = MomentumOperator::unitary(GaussMat::pauli(1).kron(&tau0), [1, 0]);
    let l_y = MomentumOperator::unitary(GaussMat::pauli(3).kron(&tau0), [0, 1]);
    let parity = MomentumOperator {
        matrix: GaussMat::pauli(2).kron(&GaussMat::pauli(2)),
        phase_half: [0, 0],
        antiunitary: false,
        inverts_k: true,
    };
    let time_reversal = MomentumOperator {
        matrix: GaussMat::identity(4),
        phase_half: [0, 0],
        antiunitary: true,
        inverts_k: true,
    };
    Ok(BandRep {
        bands: 4,
        l_x,
        l_y,
        pt: Some(PtAction {
            parity,
            time_reversal,
            setting: setting.clone(),
        }),
    })
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
}

fn sign_unit(s: i8) -> GaussInt {
    GaussInt::new(s as i64, 0)
}

/// Verifies every defining relation of the representation by exact
/// composition. Each check compares whole operators: matrix, phase vector and
/// both flags.
pub fn check_algebra(rep: &BandRep) -> Vec<RelationCheck> {
    let mut out = Vec::new();
    let mut push = |relation: &str, holds: bool| {
        out.push(RelationCheck {
            relation: relation.to_string(),
            holds,
        });
    };
    let b = rep.bands;
    let t_x = MomentumOperator::translation(b, 0);
    let t_y = MomentumOperator::translation(b, 1);

    push("l_x^2 = t_x", compose(&rep.l_x, &rep.l_x) == t_x);
    push("l_y^2 = t_y", compose(&rep.l_y, &rep.l_y) == t_y);
    push(
        "l_x l_y = -l_y l_x",
        compose(&rep.l_x, &rep.l_y)
            == compose(&rep.l_y, &rep.l_x).scale(GaussInt::new(-1, 0)),
    );

    if let Some(pt) = &rep.pt {
        let p = &pt.parity;
        let t = &pt.time_reversal;
        let s = &pt.setting;
        let one = MomentumOperator::identity(b);

        push(
            "p^2 = s_p",
            compose(p, p) == one.scale(sign_unit(s.s_p)),
        );
        push(
            "t^2 = s_t",
            compose(t, t) == one.scale(sign_unit(s.s_t)),
        );
        push("t p = p t", compose(t, p) == compose(p, t));
        push("t l_x = l_x t", compose(t, &rep.l_x) == compose(&rep.l_x, t));
        push("t l_y = l_y t", compose(t, &rep.l_y) == compose(&rep.l_y, t));

        // Conjugating a half translation by parity overshoots by a full
        // lattice vector, so the compensating unit translation appears on the
        // right-hand side; q_i fixes the residual sign.
        let qx_sign = sign_unit(if s.q[0] == 1 { -1 } else { 1 });
        let qy_sign = sign_unit(if s.q[1] == 1 { -1 } else { 1 });
        push(
            "l_x p = (-1)^{q_x} t_x p l_x",
            compose(&rep.l_x, p) == compose(&t_x, &compose(p, &rep.l_x)).scale(qx_sign),
        );
        push(
            "l_y p = (-1)^{q_y} t_y p l_y",
            compose(&rep.l_y, p) == compose(&t_y, &compose(p, &rep.l_y)).scale(qy_sign),
        );

        let pt_op = compose(p, t);
        push("p t is local in k", !pt_op.inverts_k);
        push(
            "(p t)^2 = s_p s_t",
            compose(&pt_op, &pt_op) == one.scale(sign_unit(s.s_p * s.s_t)),
        );
    }
    out
}

pub fn algebra_holds(rep: &BandRep) -> bool {
    check_algebra(rep).iter().all(|c| c.holds)
}

fn complex_det(mut m: Vec<Vec<Complex<f64>>>) -> Complex<f64> {
    let n = m.len();
    let mut det = Complex::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].norm().partial_cmp(&m[b][col].norm()).unwrap())
            .unwrap();
        if m[pivot][col].norm() == 0.0 {
            return Complex::new(0.0, 0.0);
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            for j in col..n {
                let sub = f * m[col][j];
                m[row][j] -= sub;
            }
        }
    }
    det
}

fn bloch_matrix(op: &MomentumOperator, k: [f64; 2]) -> Vec<Vec<Complex<f64>>> {
    let phase = 0.5 * (op.phase_half[0] as f64 * k[0] + op.phase_half[1] as f64 * k[1]);
    let pref = Complex::from_polar(1.0, phase);
    let n = op.matrix.n();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let z = op.matrix.get(i, j);
                    pref * Complex::new(z.re as f64, z.im as f64)
                })
                .collect()
        })
        .collect()
}

/// Winding number of `det O(k)` as `k` runs once around the Brillouin zone
/// along `direction`, sampled on `grid` points.
///
/// The determinant phase is accumulated stepwise and must return to its start
/// modulo 2 pi; an operator family that fails to close (for instance one whose
/// total phase is antiperiodic) is rejected rather than rounded.
pub fn winding_number(
    op: &MomentumOperator,
    direction: usize,
    grid: usize,
) -> Result<i64, CliffordError> {
    if direction > 1 {
        return Err(CliffordError::InvalidDirection(direction));
    }
    if op.antiunitary || op.inverts_k {
        return Err(CliffordError::WindingUndefined);
    }
    if grid < 8 {
        return Err(CliffordError::GridTooCoarse(grid));
    }
    let step = 2.0 * std::f64::consts::PI / grid as f64;
    let mut dets = Vec::with_capacity(grid + 1);
    for j in 0..=grid {
        let mut k = [0.0, 0.0];
        k[direction] = step * j as f64;
        let det = complex_det(bloch_matrix(op, k));
        if det.norm() < 1e-9 {
            return Err(CliffordError::SingularLoopPoint { index: j });
        }
        dets.push(det);
    }
    let mismatch = (dets[grid] - dets[0]).norm() / dets[0].norm();
    if mismatch > 1e-6 {
        return Err(CliffordError::NotPeriodic {
            direction,
            mismatch,
        });
    }
    let mut total = 0.0;
    for j in 0..grid {
        total += (dets[j + 1] / dets[j]).arg();
    }
    let turns = (total / (2.0 * std::f64::consts::PI)).round();
    let residual = (total - turns * 2.0 * std::f64::consts::PI).abs();
    if residual > 0.1 {
        return Err(CliffordError::WindingAmbiguous { residual });
    }
    Ok(turns as i64)
}
