//! Free resolutions of the trivial module over the group ring of a point
//! group.
//!
//! Cyclic groups get the 2-periodic resolution whose odd boundaries multiply
//! by (R - E) and whose even boundaries multiply by the norm element; every
//! other group falls back to the normalized bar resolution with free rank
//! (p-1)^n in degree n. Either way the underlying Z-complex is exact in
//! positive degrees with H_0 = Z, which the tests verify through the same
//! homology routine the resolutions feed.

use super::complex::ChainComplex;
use super::snf::ZMat;
use crate::group::WallpaperGroupData;

/// Matrix over the integral group ring of a point group of order `p`.
/// `data[r * cols + c]` holds one ring element as coefficients indexed by
/// group-element index.
#[derive(Clone, Debug)]
pub struct GroupRingMat {
    rows: usize,
    cols: usize,
    p: usize,
    data: Vec<Vec<i64>>,
}

impl GroupRingMat {
    pub fn zeros(rows: usize, cols: usize, p: usize) -> Self {
        GroupRingMat { rows, cols, p, data: vec![vec![0; p]; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Order of the group ring the entries live over.
    pub fn point_order(&self) -> usize {
        self.p
    }

    pub fn entry(&self, r: usize, c: usize) -> &[i64] {
        &self.data[r * self.cols + c]
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut Vec<i64> {
        &mut self.data[r * self.cols + c]
    }
}

/// A free resolution ... -> F_1 -> F_0 -> Z of the trivial module.
/// `boundaries[n-1]` is the map F_n -> F_{n-1} for n >= 1.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub point_order: usize,
    pub ranks: Vec<usize>,
    pub boundaries: Vec<GroupRingMat>,
}

/// Index of a generator whose powers exhaust the group, if one exists.
fn cyclic_generator(g: &WallpaperGroupData) -> Option<usize> {
    let p = g.order();
    (0..p).find(|&r| {
        let mut seen = vec![false; p];
        let mut cur = 0;
        for _ in 0..p {
            seen[cur] = true;
            cur = g.mult_table[cur][r];
        }
        seen.iter().all(|&s| s)
    })
}

/// Builds the resolution of the point group of `g` through `max_degree`.
pub fn build_resolution(g: &WallpaperGroupData, max_degree: usize) -> Resolution {
    let p = g.order();
    if p == 1 {
        let mut ranks = vec![0; max_degree + 1];
        ranks[0] = 1;
        let mut boundaries = Vec::new();
        for n in 1..=max_degree {
            boundaries.push(GroupRingMat::zeros(ranks[n - 1], ranks[n], 1));
        }
        return Resolution { point_order: 1, ranks, boundaries };
    }

    if let Some(r) = cyclic_generator(g) {
        let ranks = vec![1; max_degree + 1];
        let mut boundaries = Vec::new();
        for n in 1..=max_degree {
            let mut m = GroupRingMat::zeros(1, 1, p);
            let e = m.entry_mut(0, 0);
            if n % 2 == 1 {
                e[r] += 1;
                e[0] -= 1;
            } else {
                for k in 0..p {
                    e[k] = 1;
                }
            }
            boundaries.push(m);
        }
        return Resolution { point_order: p, ranks, boundaries };
    }

    bar_resolution(g, max_degree)
}

/// Normalized bar resolution: degree n is free on tuples [g_1|...|g_n] of
/// non-identity elements, and any face whose entry degenerates to the
/// identity is dropped.
fn bar_resolution(g: &WallpaperGroupData, max_degree: usize) -> Resolution {
    let p = g.order();
    let ranks: Vec<usize> = (0..=max_degree).map(|n| (p - 1).pow(n as u32)).collect();

    // tuple <-> index in base (p-1), digits are element index minus one
    let tuple_index = |tuple: &[usize]| -> usize {
        tuple.iter().fold(0, |acc, &x| acc * (p - 1) + (x - 1))
    };
    let tuples = |n: usize| -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (1..p).map(move |x| {
                        let mut t2 = t.clone();
                        t2.push(x);
                        t2
                    })
                })
                .collect();
        }
        out
    };

    let mut boundaries = Vec::new();
    for n in 1..=max_degree {
        let mut m = GroupRingMat::zeros(ranks[n - 1], ranks[n], p);
        for (col, t) in tuples(n).iter().enumerate() {
            // g_1 . [g_2|...|g_n]
            let head = tuple_index(&t[1..]);
            m.entry_mut(head, col)[t[0]] += 1;
            // inner faces [.. g_i g_{i+1} ..], dropped when the product is E
            for i in 0..n - 1 {
                let prod = g.mult_table[t[i]][t[i + 1]];
                if prod == 0 {
                    continue;
                }
                let mut face = t.clone();
                face[i] = prod;
                face.remove(i + 1);
                let sign = if (i + 1) % 2 == 1 { -1 } else { 1 };
                m.entry_mut(tuple_index(&face), col)[0] += sign;
            }
            // [g_1|...|g_{n-1}]
            let tail = tuple_index(&t[..n - 1]);
            let sign = if n % 2 == 1 { -1 } else { 1 };
            m.entry_mut(tail, col)[0] += sign;
        }
        boundaries.push(m);
    }
    Resolution { point_order: p, ranks, boundaries }
}

impl Resolution {
    /// The underlying complex of abelian groups: each F_n becomes Z^{rank*p}
    /// with basis (generator i, group element g), and multiplication by a
    /// ring element becomes block left-multiplication.
    pub fn flatten(&self, g: &WallpaperGroupData) -> ChainComplex {
        let p = self.point_order;
        assert_eq!(g.order(), p);
        let ranks: Vec<usize> = self.ranks.iter().map(|r| r * p).collect();
        let mut boundaries = Vec::new();
        for (n, b) in self.boundaries.iter().enumerate() {
            let _ = n;
            let mut rows = vec![vec![0i64; b.cols() * p]; b.rows() * p];
            for k in 0..b.rows() {
                for i in 0..b.cols() {
                    let a = b.entry(k, i);
                    for gi in 0..p {
                        for (h, &coeff) in a.iter().enumerate() {
                            if coeff != 0 {
                                let gp = g.mult_table[gi][h];
                                rows[k * p + gp][i * p + gi] += coeff;
                            }
                        }
                    }
                }
            }
            boundaries.push(ZMat::from_rows(&rows));
        }
        ChainComplex { ranks, boundaries, truncated: p > 1 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::load_group;
    use crate::homology::complex::homology;

    fn assert_resolution_exact(name: &str, max_degree: usize) {
        let g = load_group(name).unwrap();
        let res = build_resolution(&g, max_degree);
        let flat = res.flatten(&g);
        assert!(flat.validate().is_empty(), "{name}: flattened complex invalid");
        let h0 = homology(&flat, 0).unwrap();
        assert_eq!(h0.free_rank, 1, "{name}: H_0 free rank");
        assert!(h0.torsion.is_empty(), "{name}: H_0 torsion");
        for n in 1..max_degree {
            let h = homology(&flat, n).unwrap();
            assert!(h.is_zero(), "{name}: resolution not exact in degree {n}: {h}");
        }
    }

    #[test]
    fn periodic_resolutions_are_exact() {
        for name in ["p2", "p4", "p3", "p6"] {
            assert_resolution_exact(name, 5);
        }
    }

    #[test]
    fn trivial_group_resolution() {
        let g = load_group("p1").unwrap();
        let res = build_resolution(&g, 4);
        assert_eq!(res.ranks, vec![1, 0, 0, 0, 0]);
        assert_resolution_exact("p1", 4);
    }

    #[test]
    fn bar_resolution_is_exact_for_dihedral_groups() {
        // pmm has point group Z2 x Z2, the smallest non-cyclic case
        let g = load_group("pmm").unwrap();
        assert!(cyclic_generator(&g).is_none());
        let res = build_resolution(&g, 3);
        assert_eq!(res.ranks, vec![1, 3, 9, 27]);
        assert_resolution_exact("pmm", 3);
    }

    #[test]
    fn bar_and_periodic_agree_on_cyclic_groups() {
        // C2 admits both constructions; their flattened homology must agree
        let g = load_group("p2").unwrap();
        let bar = bar_resolution(&g, 4);
        assert_eq!(bar.ranks, vec![1, 1, 1, 1, 1]);
        let flat = bar.flatten(&g);
        assert!(flat.validate().is_empty());
        let h0 = homology(&flat, 0).unwrap();
        assert_eq!(h0.free_rank, 1);
        for n in 1..4 {
            assert!(homology(&flat, n).unwrap().is_zero());
        }
    }

    #[test]
    fn cyclic_generator_detection() {
        for (name, expect) in [("p1", true), ("p2", true), ("p6", true), ("pmm", false), ("p6m", false)] {
            let g = load_group(name).unwrap();
            assert_eq!(cyclic_generator(&g).is_some(), expect, "{name}");
        }
    }
}
