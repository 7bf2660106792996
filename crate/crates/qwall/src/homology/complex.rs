//! Chain complexes, equivariant cell complexes, and the total complex that
//! computes wallpaper-group homology.
//!
//! An `EquivariantComplex` is a finite cell structure on the torus of
//! translations together with the residual point-group action by signed cell
//! permutations. Tensoring a free resolution of the point group against the
//! cellular chains (with the diagonal identification g.f (x) e = f (x)
//! g^{-1}.e) yields a complex of finitely generated abelian groups whose
//! homology is the homology of the full wallpaper group; the periodic
//! resolution makes the result computable to any degree.

use super::resolution::{build_resolution, Resolution};
use super::snf::{smith_normal_form, ZMat};
use super::HomologyError;
use crate::group::WallpaperGroupData;
use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Finitely generated abelian group in invariant-factor form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    /// invariant factors > 1, each dividing the next
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of invariant factors with even order, i.e. the 2-rank of the
    /// torsion subgroup.
    pub fn even_torsion_count(&self) -> usize {
        let two = BigInt::from(2);
        self.torsion.iter().filter(|d| (*d % &two) == BigInt::from(0)).count()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let mut count = 1;
            while i + count < self.torsion.len() && &self.torsion[i + count] == d {
                count += 1;
            }
            if count == 1 {
                parts.push(format!("Z{d}"));
            } else {
                parts.push(format!("Z{d}^{count}"));
            }
            i += count;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// A bounded-below complex of free abelian groups. `boundaries[n-1]` maps
/// degree n to degree n-1 and has shape ranks[n-1] x ranks[n].
///
/// `truncated` marks complexes cut off from an infinite (or longer) one:
/// their top degree has no incoming boundary data, so homology there is
/// unavailable rather than silently wrong.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<ZMat>,
    pub truncated: bool,
}

impl ChainComplex {
    /// Shape and differential checks; empty result means well formed.
    pub fn validate(&self) -> Vec<String> {
        let mut problems = Vec::new();
        if self.ranks.is_empty() {
            problems.push("complex has no degrees".to_string());
            return problems;
        }
        if self.boundaries.len() + 1 != self.ranks.len() {
            problems.push(format!(
                "expected {} boundary maps for {} degrees, found {}",
                self.ranks.len() - 1,
                self.ranks.len(),
                self.boundaries.len()
            ));
            return problems;
        }
        for (n, b) in self.boundaries.iter().enumerate() {
            if b.rows() != self.ranks[n] || b.cols() != self.ranks[n + 1] {
                problems.push(format!(
                    "boundary from degree {} has shape {}x{}, expected {}x{}",
                    n + 1,
                    b.rows(),
                    b.cols(),
                    self.ranks[n],
                    self.ranks[n + 1]
                ));
            }
        }
        if !problems.is_empty() {
            return problems;
        }
        for n in 1..self.boundaries.len() {
            if !self.boundaries[n - 1].mul(&self.boundaries[n]).is_zero() {
                problems.push(format!("boundary squared is nonzero from degree {}", n + 1));
            }
        }
        problems
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }
}

/// Homology of the complex in degree n, as kernel modulo image computed
/// through Smith normal forms.
pub fn homology(c: &ChainComplex, n: usize) -> Result<AbelianGroup, HomologyError> {
    let top = c.top_degree();
    if n > top {
        if c.truncated {
            return Err(HomologyError::Truncated { degree: n });
        }
        return Ok(AbelianGroup::zero());
    }
    if n == top && c.truncated {
        return Err(HomologyError::Truncated { degree: n });
    }
    let rank_out = if n == 0 { 0 } else { smith_normal_form(&c.boundaries[n - 1]).rank() };
    let (rank_in, torsion) = if n == top {
        (0, Vec::new())
    } else {
        let snf = smith_normal_form(&c.boundaries[n]);
        let torsion: Vec<BigInt> =
            snf.divisors().into_iter().filter(|d| d > &BigInt::one()).collect();
        (snf.rank(), torsion)
    };
    let free_rank = c.ranks[n]
        .checked_sub(rank_out + rank_in)
        .expect("boundary ranks exceed chain rank; complex is not a complex");
    Ok(AbelianGroup { free_rank, torsion })
}

/// One degree of an equivariant cell structure: named cells, the signed
/// permutation action of every non-identity point-group element, and the
/// integer boundary into the previous degree (empty in degree 0).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellDegree {
    pub cells: Vec<String>,
    /// label -> signed 1-based image: action[g][j] = +-(i+1) means
    /// g . cell_j = +-cell_i
    #[serde(default)]
    pub action: BTreeMap<String, Vec<i64>>,
    #[serde(default)]
    pub boundary: Vec<Vec<i64>>,
}

/// Cell structure on the translation torus, equivariant for the point group.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EquivariantComplex {
    pub group: String,
    /// expected Euler characteristic of the orbit space, a cheap data check
    pub euler_orbit: i64,
    pub degrees: Vec<CellDegree>,
}

impl EquivariantComplex {
    pub fn from_json(text: &str) -> Result<Self, HomologyError> {
        serde_json::from_str(text).map_err(|e| HomologyError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("complex serialization cannot fail")
    }

    pub fn top_degree(&self) -> usize {
        self.degrees.len() - 1
    }
}

fn compose_signed(a: &[i64], b: &[i64]) -> Vec<i64> {
    // (a . b)(e_j) = a(b(e_j))
    b.iter()
        .map(|&x| {
            let s = x.signum();
            let y = a[(x.abs() - 1) as usize];
            s * y
        })
        .collect()
}

fn identity_perm(n: usize) -> Vec<i64> {
    (1..=n as i64).collect()
}

fn is_signed_permutation(a: &[i64], n: usize) -> bool {
    let mut seen = vec![false; n];
    for &x in a {
        let v = x.abs();
        if v < 1 || v > n as i64 || seen[(v - 1) as usize] {
            return false;
        }
        seen[(v - 1) as usize] = true;
    }
    a.len() == n
}

/// Full table of signed permutations per degree, indexed by point-group
/// element; assumes the complex already validated.
fn action_table(g: &WallpaperGroupData, cx: &EquivariantComplex) -> Vec<Vec<Vec<i64>>> {
    cx.degrees
        .iter()
        .map(|deg| {
            (0..g.order())
                .map(|r| {
                    if r == 0 {
                        identity_perm(deg.cells.len())
                    } else {
                        deg.action[&g.point_group[r].label].clone()
                    }
                })
                .collect()
        })
        .collect()
}

/// Structural checks for an equivariant complex against its group; empty
/// result means the complex is usable.
pub fn validate_equivariant_complex(
    g: &WallpaperGroupData,
    cx: &EquivariantComplex,
) -> Vec<String> {
    let mut problems = Vec::new();
    if cx.group != g.name {
        problems.push(format!("complex is labeled '{}' but the group is '{}'", cx.group, g.name));
    }
    if cx.degrees.is_empty() {
        problems.push("complex has no degrees".to_string());
        return problems;
    }

    let labels: Vec<&str> = g.point_group.iter().skip(1).map(|e| e.label.as_str()).collect();
    for (m, deg) in cx.degrees.iter().enumerate() {
        if deg.cells.is_empty() {
            problems.push(format!("degree {m} has no cells"));
        }
        for l in &labels {
            if !deg.action.contains_key(*l) {
                problems.push(format!("degree {m} is missing the action of '{l}'"));
            }
        }
        for key in deg.action.keys() {
            if !labels.contains(&key.as_str()) {
                problems.push(format!("degree {m} has an action for unknown element '{key}'"));
            }
        }
        for (key, perm) in &deg.action {
            if !is_signed_permutation(perm, deg.cells.len()) {
                problems.push(format!("degree {m}: action of '{key}' is not a signed permutation"));
            }
        }
    }
    if !problems.is_empty() {
        return problems;
    }

    // the action must be a homomorphism from the point group
    for (m, deg) in cx.degrees.iter().enumerate() {
        let n = deg.cells.len();
        let act = |r: usize| -> Vec<i64> {
            if r == 0 {
                identity_perm(n)
            } else {
                deg.action[&g.point_group[r].label].clone()
            }
        };
        for r1 in 1..g.order() {
            for r2 in 1..g.order() {
                let lhs = compose_signed(&act(r1), &act(r2));
                let rhs = act(g.mult_table[r1][r2]);
                if lhs != rhs {
                    problems.push(format!(
                        "degree {m}: action of '{}' . '{}' differs from the product element",
                        g.point_group[r1].label, g.point_group[r2].label
                    ));
                }
            }
        }
    }

    // boundary shapes
    for (m, deg) in cx.degrees.iter().enumerate() {
        if m == 0 {
            if !deg.boundary.is_empty() {
                problems.push("degree 0 must have an empty boundary".to_string());
            }
            continue;
        }
        let rows = cx.degrees[m - 1].cells.len();
        let cols = deg.cells.len();
        if deg.boundary.len() != rows || deg.boundary.iter().any(|r| r.len() != cols) {
            problems.push(format!("degree {m}: boundary must be {rows}x{cols}"));
        }
    }
    if !problems.is_empty() {
        return problems;
    }

    // boundary squared, equivariance, closed 1-cell columns
    for m in 2..cx.degrees.len() {
        let b1 = &cx.degrees[m - 1].boundary;
        let b2 = &cx.degrees[m].boundary;
        let rows = cx.degrees[m - 2].cells.len();
        for j in 0..cx.degrees[m].cells.len() {
            for i in 0..rows {
                let acc: i64 = (0..cx.degrees[m - 1].cells.len())
                    .map(|k| b1[i][k] * b2[k][j])
                    .sum();
                if acc != 0 {
                    problems.push(format!("boundary squared nonzero from degree {m}"));
                }
            }
        }
    }
    if let Some(deg1) = cx.degrees.get(1) {
        for j in 0..deg1.cells.len() {
            let sum: i64 = deg1.boundary.iter().map(|row| row[j]).sum();
            if sum != 0 {
                problems.push(format!("1-cell '{}' has a non-closed boundary", deg1.cells[j]));
            }
        }
    }
    for m in 1..cx.degrees.len() {
        let b = &cx.degrees[m].boundary;
        for r in 1..g.order() {
            let label = &g.point_group[r].label;
            let act_m = &cx.degrees[m].action[label];
            let act_prev = &cx.degrees[m - 1].action[label];
            for j in 0..cx.degrees[m].cells.len() {
                // boundary of the image cell
                let x = act_m[j];
                let (tj, ts) = ((x.abs() - 1) as usize, x.signum());
                let lhs: Vec<i64> = b.iter().map(|row| ts * row[tj]).collect();
                // image of the boundary
                let mut rhs = vec![0i64; lhs.len()];
                for i in 0..rhs.len() {
                    let y = act_prev[i];
                    let (ti, si) = ((y.abs() - 1) as usize, y.signum());
                    rhs[ti] += si * b[i][j];
                }
                if lhs != rhs {
                    problems.push(format!(
                        "degree {m}: boundary does not commute with '{label}' on cell '{}'",
                        cx.degrees[m].cells[j]
                    ));
                }
            }
        }
    }

    // Euler characteristic of the orbit space
    let mut chi = 0i64;
    for (m, deg) in cx.degrees.iter().enumerate() {
        let n = deg.cells.len();
        let mut root: Vec<usize> = (0..n).collect();
        fn find(root: &mut Vec<usize>, x: usize) -> usize {
            if root[x] != x {
                let r = find(root, root[x]);
                root[x] = r;
            }
            root[x]
        }
        for perm in deg.action.values() {
            for (j, &x) in perm.iter().enumerate() {
                let a = find(&mut root, j);
                let b = find(&mut root, (x.abs() - 1) as usize);
                root[a] = b;
            }
        }
        let orbits = (0..n).filter(|&x| find(&mut root, x) == x).count() as i64;
        chi += if m % 2 == 0 { orbits } else { -orbits };
    }
    if chi != cx.euler_orbit {
        problems.push(format!(
            "orbit Euler characteristic is {chi}, data promises {}",
            cx.euler_orbit
        ));
    }

    problems
}

/// Total complex of (resolution) tensor (cellular chains) over the point
/// group, through total degree `max_degree`.
///
/// Degree N splits into blocks F_n (x) C_m with n + m = N, ordered by
/// descending resolution degree; inside a block the basis is (generator i,
/// cell j) with the cell index fastest. The differential is
/// d(f (x) e) = (dF f) (x) e + (-1)^n f (x) (dC e), with group elements moved
/// across the tensor via g.f (x) e = f (x) g^{-1}.e.
pub fn total_complex(
    res: &Resolution,
    g: &WallpaperGroupData,
    cx: &EquivariantComplex,
    max_degree: usize,
) -> ChainComplex {
    assert!(max_degree < res.ranks.len(), "resolution too short for requested degree");
    assert_eq!(res.point_order, g.order(), "resolution built for a different point group");
    if let Some(b) = res.boundaries.first() {
        assert_eq!(b.point_order(), res.point_order);
    }
    let top_m = cx.top_degree();
    let act = action_table(g, cx);
    let cell_counts: Vec<usize> = cx.degrees.iter().map(|d| d.cells.len()).collect();

    // blocks[N] = (n, m, offset), resolution degree descending
    let mut blocks: Vec<Vec<(usize, usize, usize)>> = Vec::new();
    let mut ranks = Vec::new();
    for total in 0..=max_degree {
        let mut layout = Vec::new();
        let mut offset = 0;
        for n in (0..=total).rev() {
            let m = total - n;
            if m > top_m {
                continue;
            }
            layout.push((n, m, offset));
            offset += res.ranks[n] * cell_counts[m];
        }
        blocks.push(layout);
        ranks.push(offset);
    }

    let offset_of = |layout: &[(usize, usize, usize)], n: usize| -> usize {
        layout.iter().find(|&&(bn, _, _)| bn == n).map(|&(_, _, o)| o).expect("missing block")
    };

    let mut boundaries = Vec::new();
    for total in 1..=max_degree {
        let mut m_rows = vec![vec![0i64; ranks[total]]; ranks[total - 1]];
        let prev = &blocks[total - 1];
        for &(n, m, off) in &blocks[total] {
            let c_m = cell_counts[m];
            for i in 0..res.ranks[n] {
                for j in 0..c_m {
                    let col = off + i * c_m + j;
                    if n >= 1 && res.ranks[n - 1] > 0 {
                        let b = &res.boundaries[n - 1];
                        let dest = offset_of(prev, n - 1);
                        for k in 0..b.rows() {
                            for (h, &coeff) in b.entry(k, i).iter().enumerate() {
                                if coeff == 0 {
                                    continue;
                                }
                                let x = act[m][g.inv_table[h]][j];
                                let (j2, s) = ((x.abs() - 1) as usize, x.signum());
                                m_rows[dest + k * c_m + j2][col] += coeff * s;
                            }
                        }
                    }
                    if m >= 1 {
                        let sign = if n % 2 == 0 { 1 } else { -1 };
                        let dest = offset_of(prev, n);
                        let c_prev = cell_counts[m - 1];
                        let bnd = &cx.degrees[m].boundary;
                        for (l, row) in bnd.iter().enumerate() {
                            if row[j] != 0 {
                                m_rows[dest + i * c_prev + l][col] += sign * row[j];
                            }
                        }
                    }
                }
            }
        }
        boundaries.push(ZMat::from_rows(&m_rows));
    }

    ChainComplex { ranks, boundaries, truncated: g.order() > 1 || max_degree < top_m }
}

/// Convenience wrapper: builds the resolution internally and returns the
/// total complex through `max_degree`.
pub fn borel_total_complex(
    g: &WallpaperGroupData,
    cx: &EquivariantComplex,
    max_degree: usize,
) -> ChainComplex {
    let res = build_resolution(g, max_degree);
    total_complex(&res, g, cx, max_degree)
}

/// Homology of the wallpaper group `g` in degrees 0..=max_degree, computed
/// from the Borel total complex of its equivariant cell structure.
pub fn group_homology(
    g: &WallpaperGroupData,
    cx: &EquivariantComplex,
    max_degree: usize,
) -> Result<Vec<AbelianGroup>, HomologyError> {
    let problems = validate_equivariant_complex(g, cx);
    if !problems.is_empty() {
        return Err(HomologyError::Invalid(problems.join("; ")));
    }
    let res = build_resolution(g, max_degree + 1);
    let tc = total_complex(&res, g, cx, max_degree + 1);
    debug_assert!(tc.validate().is_empty(), "total complex failed validation");
    (0..=max_degree).map(|n| homology(&tc, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::load_group;
    use crate::homology::load_complex;

    #[test]
    fn display_formats() {
        assert_eq!(AbelianGroup::zero().to_string(), "0");
        assert_eq!(AbelianGroup::free(1).to_string(), "Z");
        assert_eq!(AbelianGroup::free(3).to_string(), "Z^3");
        let g = AbelianGroup {
            free_rank: 1,
            torsion: vec![BigInt::from(2), BigInt::from(2), BigInt::from(6)],
        };
        assert_eq!(g.to_string(), "Z x Z2^2 x Z6");
        assert_eq!(g.even_torsion_count(), 3);
    }

    #[test]
    fn homology_of_hand_built_complexes() {
        // circle: one vertex, one loop
        let circle = ChainComplex {
            ranks: vec![1, 1],
            boundaries: vec![ZMat::from_rows(&[vec![0]])],
            truncated: false,
        };
        assert!(circle.validate().is_empty());
        assert_eq!(homology(&circle, 0).unwrap(), AbelianGroup::free(1));
        assert_eq!(homology(&circle, 1).unwrap(), AbelianGroup::free(1));
        assert_eq!(homology(&circle, 5).unwrap(), AbelianGroup::zero());

        // real projective plane: d2 = [2], d1 = [0]
        let rp2 = ChainComplex {
            ranks: vec![1, 1, 1],
            boundaries: vec![ZMat::from_rows(&[vec![0]]), ZMat::from_rows(&[vec![2]])],
            truncated: false,
        };
        assert!(rp2.validate().is_empty());
        assert_eq!(homology(&rp2, 0).unwrap(), AbelianGroup::free(1));
        assert_eq!(
            homology(&rp2, 1).unwrap(),
            AbelianGroup { free_rank: 0, torsion: vec![BigInt::from(2)] }
        );
        assert_eq!(homology(&rp2, 2).unwrap(), AbelianGroup::zero());
    }

    #[test]
    fn truncated_top_degree_is_refused() {
        let c = ChainComplex {
            ranks: vec![2, 3],
            boundaries: vec![ZMat::zeros(2, 3)],
            truncated: true,
        };
        assert!(homology(&c, 0).is_ok());
        assert!(matches!(homology(&c, 1), Err(HomologyError::Truncated { degree: 1 })));
        assert!(matches!(homology(&c, 7), Err(HomologyError::Truncated { degree: 7 })));
    }

    #[test]
    fn validation_rejects_malformed_chain_complexes() {
        let c = ChainComplex {
            ranks: vec![1, 2],
            boundaries: vec![ZMat::zeros(2, 2)],
            truncated: false,
        };
        assert!(!c.validate().is_empty());

        let c = ChainComplex {
            ranks: vec![1, 1, 1],
            boundaries: vec![ZMat::from_rows(&[vec![1]]), ZMat::from_rows(&[vec![1]])],
            truncated: false,
        };
        assert!(c.validate().iter().any(|p| p.contains("squared")));
    }

    #[test]
    fn shipped_complexes_validate() {
        for name in ["p1", "p2", "pm", "pg", "cm"] {
            let g = load_group(name).unwrap();
            let cx = load_complex(name).unwrap();
            let problems = validate_equivariant_complex(&g, &cx);
            assert!(problems.is_empty(), "{name}: {problems:?}");
        }
    }

    #[test]
    fn validation_catches_corruption() {
        let g = load_group("pg").unwrap();
        let good = load_complex("pg").unwrap();

        let mut bad = (*good).clone();
        bad.degrees[2].boundary[0][0] = -1;
        let problems = validate_equivariant_complex(&g, &bad);
        assert!(!problems.is_empty(), "sign flip must break equivariance or the differential");

        let mut bad = (*good).clone();
        bad.degrees[1].action.get_mut("m").unwrap()[0] = 1;
        assert!(validate_equivariant_complex(&g, &bad)
            .iter()
            .any(|p| p.contains("signed permutation") || p.contains("differs") || p.contains("commute") || p.contains("Euler")));

        let mut bad = (*good).clone();
        bad.euler_orbit = 5;
        assert!(validate_equivariant_complex(&g, &bad).iter().any(|p| p.contains("Euler")));

        let mut bad = (*good).clone();
        bad.degrees[1].action.remove("m");
        assert!(validate_equivariant_complex(&g, &bad).iter().any(|p| p.contains("missing")));
    }

    #[test]
    fn signed_permutation_composition() {
        // a: e1 -> -e2, e2 -> e1; a^2 = -id
        let a = vec![-2i64, 1];
        assert_eq!(compose_signed(&a, &a), vec![-1, -2]);
        assert!(is_signed_permutation(&a, 2));
        assert!(!is_signed_permutation(&[1, 1], 2));
        assert!(!is_signed_permutation(&[1, 3], 2));
    }
}
