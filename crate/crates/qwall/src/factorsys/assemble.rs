//! Reduction of the cocycle identity to a homogeneous linear system over F2.
//!
//! Three families of equations, obtained by specializing the cocycle
//! identity to triples with a fixed point-group pattern, are jointly
//! equivalent to it (every other triple follows from the gauge
//! normalization; the classifier re-verifies each representative against the
//! full identity as a safety net):
//!
//! 1. ({0|R},{t1|E},{t2|E}) for all t1,t2 gives the matrix identity
//!    A + R^{-T} A R^{-1} + B_R + B_R^T + diag(beta_R) = 0 (mod 2)
//!    entrywise, tying the quadratic data of every element to the flux.
//! 2. ({0|R1},{0|R2},{t|E}) for all t forces, with omega = omega(R1,R2),
//!    f_{R1R2}(u) + f_{R1}(u) + f_{R2}(R1^{-1} u)
//!      + sigma-exponent(omega,u) + sigma-exponent(u,omega) = 0
//!    for every integer u. Functions of this shape are spanned by
//!    {u_i u_j (i>j), C(u_i,2), u_i}, so vanishing on the evaluation points
//!    {e_i, e_i + e_j, 2 e_i} is equivalent to vanishing identically.
//! 3. ({0|R1},{0|R2},{0|R3}) couples alpha to the rest:
//!    alpha(R1,R2) + alpha(R1R2,R3) + alpha(R1,R2R3) + alpha(R2,R3)
//!      + f_{R1}(R1 omega(R2,R3))
//!      + sigma-exp(R1 omega(R2,R3), omega(R1,R2R3))
//!      + sigma-exp(omega(R1,R2), omega(R1R2,R3)) = 0.
//!
//! Coefficients are accumulated as exact integers and reduced mod 2 at the
//! end, so substitutions like C(a x, 2) = a^2 C(x,2) + C(a,2) x never lose
//! carries.

use super::{binom2, UnknownMap};
use crate::gf2::{F2LinearSystem, F2Solution, F2Vec};
use crate::group::WallpaperGroupData;

/// An affine system over F2 with human-readable column labels.
#[derive(Clone, Debug)]
pub struct F2AffineSystem {
    pub labels: Vec<String>,
    pub matrix: Vec<F2Vec>,
    pub constant: Vec<u8>,
}

impl F2AffineSystem {
    pub fn n_unknowns(&self) -> usize {
        self.labels.len()
    }

    pub fn n_rows(&self) -> usize {
        self.matrix.len()
    }

    fn push_integer_row(&mut self, coeffs: &[i64], rhs: i64) {
        let mut row = F2Vec::zeros(coeffs.len());
        for (i, &c) in coeffs.iter().enumerate() {
            if c.rem_euclid(2) == 1 {
                row.set(i, true);
            }
        }
        // drop rows that are trivially 0 = 0
        if row.is_zero() && rhs.rem_euclid(2) == 0 {
            return;
        }
        self.matrix.push(row);
        self.constant.push(rhs.rem_euclid(2) as u8);
    }

    /// Appends the equation x[index] = value.
    pub fn pin(&mut self, index: usize, value: bool) {
        let mut row = F2Vec::zeros(self.n_unknowns());
        row.set(index, true);
        self.matrix.push(row);
        self.constant.push(value as u8);
    }

    pub fn is_satisfied_by(&self, x: &F2Vec) -> bool {
        self.to_linear().is_satisfied_by(x)
    }

    fn to_linear(&self) -> F2LinearSystem {
        let mut sys = F2LinearSystem::new(self.n_unknowns());
        for (row, &b) in self.matrix.iter().zip(&self.constant) {
            sys.push_row(row.clone(), b == 1);
        }
        sys
    }
}

/// Solves the system; None when inconsistent.
pub fn solve(system: &F2AffineSystem) -> Option<F2Solution> {
    system.to_linear().solve()
}

fn spanning_set(d: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..d {
        let mut u = vec![0i64; d];
        u[i] = 1;
        out.push(u);
    }
    for i in 0..d {
        for j in i + 1..d {
            let mut u = vec![0i64; d];
            u[i] = 1;
            u[j] = 1;
            out.push(u);
        }
    }
    for i in 0..d {
        let mut u = vec![0i64; d];
        u[i] = 2;
        out.push(u);
    }
    out
}

/// Adds the exact integer coefficients of f_r evaluated at t to the row.
fn add_f_coeffs(map: &UnknownMap, coeffs: &mut [i64], r: usize, t: &[i64]) {
    if r == 0 {
        return; // f_E = 0 by normalization
    }
    let d = map.d;
    for i in 0..d {
        for j in 0..i {
            coeffs[map.b_index(r, i, j)] += t[i] * t[j];
        }
        coeffs[map.beta_index(r, i)] += binom2(t[i]);
        coeffs[map.q_index(r, i)] += t[i];
    }
}

/// Adds coefficients of sigma-exponent(t1, t2) = t1^T A t2.
fn add_sigma_coeffs(map: &UnknownMap, coeffs: &mut [i64], t1: &[i64], t2: &[i64]) {
    let d = map.d;
    for i in 0..d {
        for j in 0..i {
            coeffs[map.a_index(i, j)] += t1[i] * t2[j];
        }
    }
}

/// Builds the full consistency system for a group. The system is
/// homogeneous; its solution space, modulo [`coboundary_space`], is the
/// second cohomology with Z2 coefficients.
pub fn assemble_consistency_system(group: &WallpaperGroupData) -> F2AffineSystem {
    let map = UnknownMap::new(group);
    let d = group.dimension;
    let p = group.order();
    let n = map.n_unknowns;
    let mut sys = F2AffineSystem { labels: map.labels(), matrix: Vec::new(), constant: Vec::new() };

    // family 1: quadratic data pinned to the flux, entrywise over (i,j)
    for r in 1..p {
        let rinv = &group.point_group[group.inv_table[r]].matrix;
        for i in 0..d {
            for j in 0..d {
                let mut coeffs = vec![0i64; n];
                if i > j {
                    coeffs[map.a_index(i, j)] += 1;
                    coeffs[map.b_index(r, i, j)] += 1;
                }
                if j > i {
                    coeffs[map.b_index(r, j, i)] += 1;
                }
                if i == j {
                    coeffs[map.beta_index(r, i)] += 1;
                }
                // [R^{-T} A R^{-1}]_{ij} = sum_{k>l} a_{kl} Rinv_{ki} Rinv_{lj}
                for k in 0..d {
                    for l in 0..k {
                        coeffs[map.a_index(k, l)] += rinv.get(k, i) * rinv.get(l, j);
                    }
                }
                sys.push_integer_row(&coeffs, 0);
            }
        }
    }

    // family 2: compatibility of f across products, on the spanning set
    let span = spanning_set(d);
    for r1 in 1..p {
        let r1inv = &group.point_group[group.inv_table[r1]].matrix;
        for r2 in 1..p {
            let r12 = group.mult_table[r1][r2];
            let w = group.omega(r1, r2);
            for u in &span {
                let v = r1inv.mulv(u);
                let mut coeffs = vec![0i64; n];
                add_f_coeffs(&map, &mut coeffs, r12, u);
                add_f_coeffs(&map, &mut coeffs, r1, u);
                add_f_coeffs(&map, &mut coeffs, r2, &v);
                add_sigma_coeffs(&map, &mut coeffs, w, u);
                add_sigma_coeffs(&map, &mut coeffs, u, w);
                sys.push_integer_row(&coeffs, 0);
            }
        }
    }

    // family 3: the alpha cocycle condition twisted by flux and f
    for r1 in 1..p {
        let m1 = &group.point_group[r1].matrix;
        for r2 in 1..p {
            let r12 = group.mult_table[r1][r2];
            let w12 = group.omega(r1, r2);
            for r3 in 1..p {
                let r23 = group.mult_table[r2][r3];
                let w12_3 = group.omega(r12, r3);
                let w23 = group.omega(r2, r3);
                let w1_23 = group.omega(r1, r23);
                let x = m1.mulv(w23);
                let mut coeffs = vec![0i64; n];
                coeffs[map.alpha_index(r1, r2)] += 1;
                coeffs[map.alpha_index(r2, r3)] += 1;
                if r12 != 0 {
                    coeffs[map.alpha_index(r12, r3)] += 1;
                }
                if r23 != 0 {
                    coeffs[map.alpha_index(r1, r23)] += 1;
                }
                add_f_coeffs(&map, &mut coeffs, r1, &x);
                add_sigma_coeffs(&map, &mut coeffs, &x, w1_23);
                add_sigma_coeffs(&map, &mut coeffs, w12, w12_3);
                sys.push_integer_row(&coeffs, 0);
            }
        }
    }

    sys
}

/// Generators of the coboundary subspace inside the solution space, in the
/// same unknown coordinates. A gauge transformation
/// chi({t|R}) = (-1)^{kappa . t + phi(R)} shifts
///   q_R by (R^{-T} + 1) kappa,
///   alpha(R1,R2) by kappa . omega(R1,R2) + phi(R1) + phi(R2) + phi(R1R2),
/// and leaves the flux and quadratic data untouched. Within the canonical
/// gauge these exhaust all equivalences, so the returned vectors span the
/// subspace to quotient by. They may be linearly dependent.
pub fn coboundary_space(group: &WallpaperGroupData) -> Vec<F2Vec> {
    let map = UnknownMap::new(group);
    let d = group.dimension;
    let p = group.order();
    let n = map.n_unknowns;
    let mut gens = Vec::new();

    for c in 0..d {
        let mut coeffs = vec![0i64; n];
        for r in 1..p {
            let rinv = &group.point_group[group.inv_table[r]].matrix;
            for i in 0..d {
                let mut x = if i == c { 1 } else { 0 };
                x += rinv.get(c, i);
                coeffs[map.q_index(r, i)] += x;
            }
            for r2 in 1..p {
                coeffs[map.alpha_index(r, r2)] += group.omega(r, r2)[c];
            }
        }
        let mut v = F2Vec::zeros(n);
        for (i, &x) in coeffs.iter().enumerate() {
            if x.rem_euclid(2) == 1 {
                v.set(i, true);
            }
        }
        gens.push(v);
    }

    for r0 in 1..p {
        let mut v = F2Vec::zeros(n);
        for r1 in 1..p {
            for r2 in 1..p {
                let mut bit = (r1 == r0) as u8 ^ (r2 == r0) as u8;
                if group.mult_table[r1][r2] == r0 {
                    bit ^= 1;
                }
                if bit == 1 {
                    v.flip(map.alpha_index(r1, r2));
                }
            }
        }
        gens.push(v);
    }

    gens
}
