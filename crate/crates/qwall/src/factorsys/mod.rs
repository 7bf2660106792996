//! Z2-valued factor systems of wallpaper groups.
//!
//! A factor system nu(g1,g2) in {+1,-1} obeying the cocycle identity
//! nu(g1,g2) nu(g1g2,g3) = nu(g1,g2g3) nu(g2,g3) is stored in a canonical
//! gauge as four pieces:
//!
//! * sigma(t1,t2) = (-1)^{t1^T A t2} with A strictly lower triangular over
//!   F2 (the magnetic flux data on pure translations),
//! * g(t,R) = (-1)^{f_R(t)} with
//!   f_R(t) = sum_{i>j} B_R[i][j] t_i t_j + sum_i beta_R[i] C(t_i,2)
//!          + sum_i q_R[i] t_i,
//!   the mixed translation/point-group factor,
//! * alpha(R1,R2) in {0,1}, the residual factor system on point-group pairs.
//!
//! The binomial coefficients C(t_i,2) are required: for threefold and
//! sixfold symmetries the consistency equations force quadratic terms whose
//! second difference has nonzero diagonal, which products t_i t_j alone
//! cannot produce. The full factor is assembled as
//!
//!   nu({t1|R1},{t2|R2}) = sigma(t1, R1 t2)
//!                       * sigma(t1 + R1 t2, omega(R1,R2))
//!                       * g^{-1}(R1 t2, R1)
//!                       * (-1)^{alpha(R1,R2)},
//!
//! with the normalizations alpha(E,.) = alpha(.,E) = 0, f_E = 0, q and all
//! quadratic data zero for the identity row.

mod assemble;
mod classify;
mod eval;

pub use assemble::{assemble_consistency_system, coboundary_space, solve, F2AffineSystem};
pub use classify::{are_equivalent, classify, ClassificationResult, EquivalenceWitness};
pub use eval::{check_cocycle, CocycleReport, CocycleViolation};

use crate::gf2::F2Vec;
use crate::group::{SpaceGroupElement, WallpaperGroupData};
use std::sync::Arc;

/// Flux data on translations: sigma(t1,t2) = (-1)^{t1^T A t2} with A
/// strictly lower triangular over F2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationFactor {
    pub a_matrix: Vec<Vec<u8>>,
}

/// Mixed factor g(t,R) = (-1)^{f_R(t)} per point-group element. The
/// identity row is identically zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GFactor {
    /// strictly lower triangular quadratic coefficients, indexed [r][i][j]
    pub b_form: Vec<Vec<Vec<u8>>>,
    /// coefficients of C(t_i, 2), indexed [r][i]
    pub beta: Vec<Vec<u8>>,
    /// linear coefficients (momentum in half-reciprocal units), indexed [r][i]
    pub q_vec: Vec<Vec<u8>>,
}

/// Residual factor system on point-group pairs; rows and columns touching
/// the identity are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaFactor {
    pub table: Vec<Vec<u8>>,
}

#[derive(Debug, Clone)]
pub struct FactorSystem {
    pub group: Arc<WallpaperGroupData>,
    pub sigma: TranslationFactor,
    pub g: GFactor,
    pub alpha: AlphaFactor,
}

impl PartialEq for FactorSystem {
    fn eq(&self, other: &Self) -> bool {
        self.group.name == other.group.name
            && self.sigma == other.sigma
            && self.g == other.g
            && self.alpha == other.alpha
    }
}
impl Eq for FactorSystem {}

impl FactorSystem {
    pub fn trivial(group: Arc<WallpaperGroupData>) -> Self {
        let d = group.dimension;
        let p = group.order();
        FactorSystem {
            sigma: TranslationFactor { a_matrix: vec![vec![0; d]; d] },
            g: GFactor {
                b_form: vec![vec![vec![0; d]; d]; p],
                beta: vec![vec![0; d]; p],
                q_vec: vec![vec![0; d]; p],
            },
            alpha: AlphaFactor { table: vec![vec![0; p]; p] },
            group,
        }
    }

    /// f_R(t) mod 2, the exponent of g(t,R). Exact for any integer t.
    pub fn f_exponent(&self, r: usize, t: &[i64]) -> u8 {
        let d = self.group.dimension;
        debug_assert_eq!(t.len(), d);
        let mut acc: i64 = 0;
        for i in 0..d {
            for j in 0..i {
                if self.g.b_form[r][i][j] == 1 {
                    acc += t[i] * t[j];
                }
            }
            if self.g.beta[r][i] == 1 {
                acc += binom2(t[i]);
            }
            if self.g.q_vec[r][i] == 1 {
                acc += t[i];
            }
        }
        acc.rem_euclid(2) as u8
    }

    /// Exponent of sigma(t1,t2) = t1^T A t2 mod 2.
    pub fn sigma_exponent(&self, t1: &[i64], t2: &[i64]) -> u8 {
        let d = self.group.dimension;
        let mut acc: i64 = 0;
        for i in 0..d {
            for j in 0..d {
                if self.sigma.a_matrix[i][j] == 1 {
                    acc += t1[i] * t2[j];
                }
            }
        }
        acc.rem_euclid(2) as u8
    }

    /// Exponent of the full factor nu(g1,g2).
    pub fn exponent(&self, g1: &SpaceGroupElement, g2: &SpaceGroupElement) -> u8 {
        let r1t2 = self.group.point_group[g1.r].matrix.mulv(&g2.t);
        let w = self.group.omega(g1.r, g2.r);
        let sum: Vec<i64> = g1.t.iter().zip(&r1t2).map(|(a, b)| a + b).collect();
        let mut e = self.sigma_exponent(&g1.t, &r1t2);
        e ^= self.sigma_exponent(&sum, w);
        e ^= self.f_exponent(g1.r, &r1t2);
        e ^= self.alpha.table[g1.r][g2.r];
        e
    }

    /// Labels of the nonzero gauge components, for diagnostics and output.
    pub fn nonzero_labels(&self) -> Vec<String> {
        let map = UnknownMap::new(&self.group);
        let bits = map.pack(self);
        let labels = map.labels();
        bits.iter_ones().map(|i| labels[i].clone()).collect()
    }
}

/// nu(g1,g2) as +1/-1.
pub fn evaluate(fs: &FactorSystem, g1: &SpaceGroupElement, g2: &SpaceGroupElement) -> i8 {
    if fs.exponent(g1, g2) == 0 {
        1
    } else {
        -1
    }
}

/// Wilson loop W(t1,t2) = sigma(t1,t2)/sigma(t2,t1) = (-1)^{t1^T (A+A^T) t2}:
/// the gauge-invariant flux through the parallelogram spanned by t1, t2.
pub fn wilson_loop(fs: &FactorSystem, t1: &[i64], t2: &[i64]) -> i8 {
    let e = fs.sigma_exponent(t1, t2) ^ fs.sigma_exponent(t2, t1);
    if e == 0 {
        1
    } else {
        -1
    }
}

/// The alpha table restricted to the point group, together with whether it
/// is a 2-cocycle of the point group on its own (it need not be: the mixed
/// factor g can absorb the failure when the group is nonsymmorphic).
pub fn restrict_to_point_group(fs: &FactorSystem) -> (AlphaFactor, bool) {
    let p = fs.group.order();
    let mult = &fs.group.mult_table;
    let a = &fs.alpha.table;
    let mut ok = true;
    'outer: for r1 in 0..p {
        for r2 in 0..p {
            for r3 in 0..p {
                let lhs = a[r1][r2] ^ a[mult[r1][r2]][r3];
                let rhs = a[r2][r3] ^ a[r1][mult[r2][r3]];
                if lhs != rhs {
                    ok = false;
                    break 'outer;
                }
            }
        }
    }
    (fs.alpha.clone(), ok)
}

/// Twists `fs` by the coboundary of chi({t|R}) = (-1)^{kappa . t + phi(R)}.
/// kappa has one bit per lattice direction; phi has one bit per point-group
/// element with phi(E) = 0.
pub fn apply_coboundary(fs: &FactorSystem, kappa: &[u8], phi: &[u8]) -> FactorSystem {
    let d = fs.group.dimension;
    let p = fs.group.order();
    assert_eq!(kappa.len(), d);
    assert_eq!(phi.len(), p);
    assert_eq!(phi[0], 0, "phi must vanish on the identity");
    let mut out = fs.clone();
    for r in 1..p {
        let rinv = &fs.group.point_group[fs.group.inv_table[r]].matrix;
        for i in 0..d {
            // delta q_R = (R^{-T} + 1) kappa
            let mut bit = kappa[i] as i64;
            for c in 0..d {
                if kappa[c] == 1 {
                    bit += rinv.get(c, i);
                }
            }
            out.g.q_vec[r][i] ^= bit.rem_euclid(2) as u8;
        }
    }
    for r1 in 1..p {
        for r2 in 1..p {
            let w = fs.group.omega(r1, r2);
            let mut bit: i64 = (0..d).map(|c| kappa[c] as i64 * w[c]).sum();
            bit += (phi[r1] + phi[r2] + phi[fs.group.mult_table[r1][r2]]) as i64;
            out.alpha.table[r1][r2] ^= bit.rem_euclid(2) as u8;
        }
    }
    out
}

pub(crate) fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// Fixed packing of all gauge components into one F2 vector, in the order
/// flux A, then per-element quadratic B, binomial beta, linear q, and
/// finally the alpha table over non-identity pairs.
pub struct UnknownMap {
    pub d: usize,
    pub p: usize,
    lower_pairs: Vec<(usize, usize)>,
    off_b: usize,
    off_beta: usize,
    off_q: usize,
    off_alpha: usize,
    pub n_unknowns: usize,
    element_labels: Vec<String>,
}

impl UnknownMap {
    pub fn new(group: &WallpaperGroupData) -> Self {
        let d = group.dimension;
        let p = group.order();
        let lower_pairs: Vec<(usize, usize)> =
            (0..d).flat_map(|i| (0..i).map(move |j| (i, j))).collect();
        let nl = lower_pairs.len();
        let off_b = nl;
        let off_beta = off_b + (p - 1) * nl;
        let off_q = off_beta + (p - 1) * d;
        let off_alpha = off_q + (p - 1) * d;
        let n_unknowns = off_alpha + (p - 1) * (p - 1);
        UnknownMap {
            d,
            p,
            lower_pairs,
            off_b,
            off_beta,
            off_q,
            off_alpha,
            n_unknowns,
            element_labels: group.point_group.iter().map(|e| e.label.clone()).collect(),
        }
    }

    fn pair_pos(&self, i: usize, j: usize) -> usize {
        self.lower_pairs.iter().position(|&(a, b)| (a, b) == (i, j)).expect("i > j required")
    }

    pub fn a_index(&self, i: usize, j: usize) -> usize {
        self.pair_pos(i, j)
    }

    pub fn b_index(&self, r: usize, i: usize, j: usize) -> usize {
        debug_assert!(r >= 1);
        self.off_b + (r - 1) * self.lower_pairs.len() + self.pair_pos(i, j)
    }

    pub fn beta_index(&self, r: usize, i: usize) -> usize {
        debug_assert!(r >= 1);
        self.off_beta + (r - 1) * self.d + i
    }

    pub fn q_index(&self, r: usize, i: usize) -> usize {
        debug_assert!(r >= 1);
        self.off_q + (r - 1) * self.d + i
    }

    pub fn alpha_index(&self, r1: usize, r2: usize) -> usize {
        debug_assert!(r1 >= 1 && r2 >= 1);
        self.off_alpha + (r1 - 1) * (self.p - 1) + (r2 - 1)
    }

    pub fn labels(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.n_unknowns);
        for &(i, j) in &self.lower_pairs {
            out.push(format!("a[{i},{j}]"));
        }
        for r in 1..self.p {
            for &(i, j) in &self.lower_pairs {
                out.push(format!("b[{}][{i},{j}]", self.element_labels[r]));
            }
        }
        for r in 1..self.p {
            for i in 0..self.d {
                out.push(format!("beta[{}][{i}]", self.element_labels[r]));
            }
        }
        for r in 1..self.p {
            for i in 0..self.d {
                out.push(format!("q[{}][{i}]", self.element_labels[r]));
            }
        }
        for r1 in 1..self.p {
            for r2 in 1..self.p {
                out.push(format!(
                    "alpha[{},{}]",
                    self.element_labels[r1], self.element_labels[r2]
                ));
            }
        }
        debug_assert_eq!(out.len(), self.n_unknowns);
        out
    }

    pub fn pack(&self, fs: &FactorSystem) -> F2Vec {
        let mut v = F2Vec::zeros(self.n_unknowns);
        for &(i, j) in &self.lower_pairs {
            if fs.sigma.a_matrix[i][j] == 1 {
                v.set(self.a_index(i, j), true);
            }
        }
        for r in 1..self.p {
            for &(i, j) in &self.lower_pairs {
                if fs.g.b_form[r][i][j] == 1 {
                    v.set(self.b_index(r, i, j), true);
                }
            }
            for i in 0..self.d {
                if fs.g.beta[r][i] == 1 {
                    v.set(self.beta_index(r, i), true);
                }
                if fs.g.q_vec[r][i] == 1 {
                    v.set(self.q_index(r, i), true);
                }
            }
        }
        for r1 in 1..self.p {
            for r2 in 1..self.p {
                if fs.alpha.table[r1][r2] == 1 {
                    v.set(self.alpha_index(r1, r2), true);
                }
            }
        }
        v
    }

    pub fn unpack(&self, group: Arc<WallpaperGroupData>, v: &F2Vec) -> FactorSystem {
        assert_eq!(v.len(), self.n_unknowns);
        let mut fs = FactorSystem::trivial(group);
        for &(i, j) in &self.lower_pairs {
            fs.sigma.a_matrix[i][j] = v.get(self.a_index(i, j)) as u8;
        }
        for r in 1..self.p {
            for &(i, j) in &self.lower_pairs {
                fs.g.b_form[r][i][j] = v.get(self.b_index(r, i, j)) as u8;
            }
            for i in 0..self.d {
                fs.g.beta[r][i] = v.get(self.beta_index(r, i)) as u8;
                fs.g.q_vec[r][i] = v.get(self.q_index(r, i)) as u8;
            }
        }
        for r1 in 1..self.p {
            for r2 in 1..self.p {
                fs.alpha.table[r1][r2] = v.get(self.alpha_index(r1, r2)) as u8;
            }
        }
        fs
    }
}
