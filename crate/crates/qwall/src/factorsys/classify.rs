//! Classification of factor systems up to equivalence.
//!
//! The solution space of the consistency system, quotiented by the
//! coboundary subspace, is an F2 vector space whose dimension is the
//! Z2-cohomology degree-two dimension of the group. Each class is
//! represented by its unique member vanishing on all coboundary pivot
//! coordinates, which is also the lexicographically smallest member in the
//! fixed unknown order. Every representative is re-verified against the
//! full cocycle identity over all translation residues before being
//! returned.

use super::eval::ResidueTables;
use super::{
    apply_coboundary, assemble_consistency_system, coboundary_space, solve, FactorSystem,
    UnknownMap,
};
use crate::gf2::{F2LinearSystem, F2Vec, RrefBasis};
use crate::group::WallpaperGroupData;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct ClassificationResult {
    pub group: String,
    pub solution_dimension: usize,
    pub coboundary_dimension: usize,
    pub h2_dimension: usize,
    pub representatives: Vec<FactorSystem>,
}

pub fn classify(group: &Arc<WallpaperGroupData>) -> ClassificationResult {
    let map = UnknownMap::new(group);
    let sys = assemble_consistency_system(group);
    let sol = solve(&sys).expect("homogeneous system is always consistent");
    assert!(sol.particular.is_zero());

    let mut cob = RrefBasis::new(map.n_unknowns);
    for gen in coboundary_space(group) {
        assert!(
            sys.is_satisfied_by(&gen),
            "{}: coboundary generator escapes the solution space",
            group.name
        );
        cob.insert(&gen);
    }

    let mut quotient = RrefBasis::new(map.n_unknowns);
    for k in &sol.kernel {
        quotient.insert(&cob.reduce(k));
    }
    let h2 = quotient.rank();
    assert_eq!(
        h2 + cob.rank(),
        sol.kernel.len(),
        "{}: coboundary space must embed in the solution space",
        group.name
    );
    assert!(h2 < 31, "class enumeration is only supported for small quotients");

    // Sums of reduced basis vectors stay reduced (they vanish on every
    // coboundary pivot), so each sum is already the canonical leader of a
    // distinct class.
    let rows = quotient.rows().to_vec();
    let mut leaders: Vec<F2Vec> = (0u32..1 << h2)
        .map(|mask| {
            let mut v = F2Vec::zeros(map.n_unknowns);
            for (b, row) in rows.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    v.xor_assign(row);
                }
            }
            v
        })
        .collect();
    leaders.sort_by(|a, b| a.lex_cmp(b));

    let tables = ResidueTables::new(group);
    let representatives = leaders
        .iter()
        .map(|v| {
            assert!(sys.is_satisfied_by(v), "{}: leader escapes the solution space", group.name);
            let fs = map.unpack(group.clone(), v);
            let (_, violation) = tables.check(&fs, &[0, 1, 2, 3]);
            assert!(
                violation.is_none(),
                "{}: representative fails the exhaustive cocycle check: {violation:?}",
                group.name
            );
            fs
        })
        .collect();

    ClassificationResult {
        group: group.name.clone(),
        solution_dimension: sol.kernel.len(),
        coboundary_dimension: cob.rank(),
        h2_dimension: h2,
        representatives,
    }
}

/// A gauge transformation chi({t|R}) = (-1)^{kappa . t + phi(R)} exhibiting
/// the equivalence of two factor systems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub kappa: Vec<u8>,
    pub phi: Vec<u8>,
}

/// Decides equivalence of two factor systems in the canonical gauge and
/// returns a witness when they are. Flux and the quadratic data it pins are
/// class invariants; the remaining freedom is a lattice character kappa
/// (matched by enumeration, 2^d candidates) and a point-group character phi
/// (solved linearly).
pub fn are_equivalent(fs1: &FactorSystem, fs2: &FactorSystem) -> Option<EquivalenceWitness> {
    assert_eq!(fs1.group.name, fs2.group.name, "factor systems live on different groups");
    let d = fs1.group.dimension;
    let p = fs1.group.order();

    if fs1.sigma != fs2.sigma || fs1.g.b_form != fs2.g.b_form || fs1.g.beta != fs2.g.beta {
        return None;
    }

    for bits in 0u32..1 << d {
        let kappa: Vec<u8> = (0..d).map(|i| (bits >> i & 1) as u8).collect();
        let shifted = apply_coboundary(fs1, &kappa, &vec![0u8; p]);
        if shifted.g.q_vec != fs2.g.q_vec {
            continue;
        }
        let mut sys = F2LinearSystem::new(p - 1);
        for r1 in 1..p {
            for r2 in 1..p {
                let mut row = F2Vec::zeros(p - 1);
                row.flip(r1 - 1);
                row.flip(r2 - 1);
                let r12 = fs1.group.mult_table[r1][r2];
                if r12 != 0 {
                    row.flip(r12 - 1);
                }
                let rhs = shifted.alpha.table[r1][r2] ^ fs2.alpha.table[r1][r2];
                sys.push_row(row, rhs == 1);
            }
        }
        if let Some(sol) = sys.solve() {
            let mut phi = vec![0u8; p];
            for r in 1..p {
                phi[r] = sol.particular.get(r - 1) as u8;
            }
            let rebuilt = apply_coboundary(fs1, &kappa, &phi);
            assert!(rebuilt == *fs2, "witness failed to reproduce the target system");
            return Some(EquivalenceWitness { kappa, phi });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorsys::{check_cocycle, evaluate};
    use crate::group::{load_group, SpaceGroupElement};

    #[test]
    fn glide_group_has_one_nontrivial_class() {
        let g = load_group("pg").unwrap();
        let result = classify(&g);
        assert_eq!(result.solution_dimension, 2);
        assert_eq!(result.coboundary_dimension, 1);
        assert_eq!(result.h2_dimension, 1);
        assert_eq!(result.representatives.len(), 2);

        let trivial = &result.representatives[0];
        assert_eq!(*trivial, FactorSystem::trivial(g.clone()));

        let nt = &result.representatives[1];
        let m = g.element_index("m").unwrap();
        assert_eq!(nt.sigma.a_matrix, vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(nt.g.b_form[m], vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(nt.g.beta[m], vec![0, 0]);
        assert_eq!(nt.g.q_vec[m], vec![0, 1]);
        assert_eq!(nt.alpha.table[m][m], 0);

        // the class representative: nu = 1 when the left slot is a pure
        // translation, (-1)^{t2_y} when it carries the glide
        for t1x in -2..=2 {
            for t2x in -2..=2 {
                for t2y in -2i64..=2 {
                    for r2 in 0..2 {
                        let g1t = SpaceGroupElement::new(vec![t1x, 1], 0);
                        let g2 = SpaceGroupElement::new(vec![t2x, t2y], r2);
                        assert_eq!(evaluate(nt, &g1t, &g2), 1);
                        let g1m = SpaceGroupElement::new(vec![t1x, 1], m);
                        let expect = if t2y.rem_euclid(2) == 0 { 1 } else { -1 };
                        assert_eq!(evaluate(nt, &g1m, &g2), expect);
                    }
                }
            }
        }

        assert!(are_equivalent(trivial, nt).is_none());
        assert!(check_cocycle(nt, 2).ok);
    }

    #[test]
    fn coboundary_twins_are_equivalent_with_verified_witness() {
        let g = load_group("pmg").unwrap();
        let result = classify(&g);
        for rep in &result.representatives {
            let twisted = apply_coboundary(rep, &[1, 1], &[0, 1, 0, 1]);
            let w = are_equivalent(rep, &twisted).expect("twin must be equivalent");
            assert_eq!(apply_coboundary(rep, &w.kappa, &w.phi), twisted);
        }
    }

    #[test]
    fn half_turn_group_classes_are_pairwise_distinct() {
        let g = load_group("p2").unwrap();
        let result = classify(&g);
        assert_eq!(result.h2_dimension, 4);
        assert_eq!(result.representatives.len(), 16);
        for (i, a) in result.representatives.iter().enumerate() {
            for b in result.representatives.iter().skip(i + 1) {
                assert!(are_equivalent(a, b).is_none());
            }
        }
    }

    #[test]
    fn first_representative_is_always_trivial() {
        for name in ["pm", "cm", "p4", "p3"] {
            let g = load_group(name).unwrap();
            let result = classify(&g);
            assert_eq!(result.representatives[0], FactorSystem::trivial(g.clone()), "{name}");
        }
    }
}
