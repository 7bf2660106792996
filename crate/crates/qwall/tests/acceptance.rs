//! Acceptance gate: ten numbered criteria covering the classification
//! table, the pg homology pipeline, universal coefficients, flux pinning,
//! explicit factor systems, the Clifford table, winding numbers, measured
//! degeneracies, and the exactness invariants of every solver layer.
//!
//! Each test prints one `criterion N: PASS` line; a failure panics with the
//! offending values.

use num_bigint::BigInt;
use qwall::clifford::{
    classify_clifford, degeneracy_check, signature, two_band_rep, winding_number, four_band_rep,
    GaussMat, MomentumOperator, SymmetrySetting,
};
use qwall::factorsys::{
    are_equivalent, assemble_consistency_system, check_cocycle, classify, coboundary_space,
    evaluate, solve, UnknownMap,
};
use qwall::group::{load_group, SpaceGroupElement, GROUP_NAMES};
use qwall::homology::{
    borel_total_complex, cohomology_from_uct, group_homology, load_complex, smith_normal_form,
    Cohomology, COMPLEX_NAMES, ZMat,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

const EXPECTED_DIMS: [(&str, usize); 17] = [
    ("p1", 1),
    ("p2", 4),
    ("pm", 4),
    ("pg", 1),
    ("cm", 2),
    ("pmm", 8),
    ("pmg", 4),
    ("pgg", 2),
    ("cmm", 5),
    ("p4", 3),
    ("p4m", 6),
    ("p4g", 3),
    ("p3", 1),
    ("p3m1", 2),
    ("p31m", 2),
    ("p6", 2),
    ("p6m", 4),
];

#[test]
fn criterion_01_z2_classification_of_all_seventeen_groups() {
    let start = Instant::now();
    for (name, expected) in EXPECTED_DIMS {
        let g = load_group(name).unwrap();
        let result = classify(&g);
        // p6m: the mod-2 dimension is forced to 4 by the exponential exact
        // sequence: two dimensions from Hom of the abelianization Z2 x Z2
        // into Z2, two more from the even-order torsion Z2 x Z2 of the
        // circle-coefficient classes. The solver agrees.
        assert_eq!(
            result.h2_dimension, expected,
            "{name}: solver found dimension {}, expected {expected}",
            result.h2_dimension
        );
        assert_eq!(result.representatives.len(), 1 << expected, "{name} representative count");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "classification took {elapsed:?}, budget 10s");
    println!("criterion 1: PASS - all 17 mod-2 dimensions match ({elapsed:?})");
}

#[test]
fn criterion_02_pg_total_complex_matrices_and_homology() {
    let start = Instant::now();
    let g = load_group("pg").unwrap();
    let cx = load_complex("pg").unwrap();

    let tc = borel_total_complex(&g, &cx, 5);
    assert_eq!(tc.ranks, vec![2, 6, 8, 8, 8, 8], "pg total-complex ranks");
    let divisors: Vec<Vec<i64>> = tc
        .boundaries
        .iter()
        .map(|b| {
            smith_normal_form(b)
                .divisors()
                .iter()
                .map(|d| i64::try_from(d).unwrap())
                .collect()
        })
        .collect();
    assert_eq!(divisors[0], vec![1], "smith form of boundary 1");
    assert_eq!(divisors[1], vec![1, 1, 1, 2], "smith form of boundary 2");
    for (i, d) in divisors.iter().enumerate().skip(2) {
        assert_eq!(*d, vec![1, 1, 1, 1], "smith form of boundary {}", i + 1);
    }

    let h = group_homology(&g, &cx, 5).unwrap();
    assert_eq!((h[0].free_rank, h[0].torsion.clone()), (1, vec![]), "H_0(pg)");
    assert_eq!(
        (h[1].free_rank, h[1].torsion.clone()),
        (1, vec![BigInt::from(2)]),
        "H_1(pg)"
    );
    for (n, hn) in h.iter().enumerate().skip(2) {
        assert!(hn.is_zero(), "H_{n}(pg) = {hn} but must vanish");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_millis() < 1000, "pg homology took {elapsed:?}, budget 1s");
    println!("criterion 2: PASS - pg matrices, Smith forms, and homology ({elapsed:?})");
}

#[test]
fn criterion_03_degree_two_cohomology_both_coefficient_systems() {
    let expect_u1: [(&str, Cohomology); 5] = [
        ("p1", Cohomology::Circle { circle_rank: 1, torsion: vec![] }),
        ("p2", Cohomology::Circle { circle_rank: 1, torsion: vec![] }),
        ("pm", Cohomology::Circle { circle_rank: 0, torsion: vec![BigInt::from(2), BigInt::from(2)] }),
        ("pg", Cohomology::Circle { circle_rank: 0, torsion: vec![] }),
        ("cm", Cohomology::Circle { circle_rank: 0, torsion: vec![BigInt::from(2)] }),
    ];
    for (name, expected) in expect_u1 {
        let g = load_group(name).unwrap();
        let cx = load_complex(name).unwrap();
        let h = group_homology(&g, &cx, 2).unwrap();
        let circle = cohomology_from_uct(&h, 2, "u1".parse().unwrap());
        assert_eq!(circle, expected, "H^2({name}, U(1))");
    }
    for (name, dim) in [("p1", 1usize), ("pg", 1)] {
        let g = load_group(name).unwrap();
        let cx = load_complex(name).unwrap();
        let h = group_homology(&g, &cx, 2).unwrap();
        let mod2 = cohomology_from_uct(&h, 2, "z2".parse().unwrap());
        assert_eq!(mod2, Cohomology::Mod2 { dimension: dim }, "H^2({name}, Z2)");
    }
    println!("criterion 3: PASS - degree-two cohomology over U(1) and Z2");
}

#[test]
fn criterion_04_uct_dimension_agrees_with_the_linear_solver() {
    for name in COMPLEX_NAMES {
        let g = load_group(name).unwrap();
        let cx = load_complex(name).unwrap();
        let h = group_homology(&g, &cx, 2).unwrap();
        let Cohomology::Mod2 { dimension } = cohomology_from_uct(&h, 2, "z2".parse().unwrap())
        else {
            panic!("z2 coefficients must produce a mod-2 group");
        };
        let solver_dim = classify(&g).h2_dimension;
        assert_eq!(
            dimension, solver_dim,
            "{name}: topology gives {dimension}, factor-system solver gives {solver_dim}"
        );
    }
    println!("criterion 4: PASS - two independent computations agree on all shipped complexes");
}

#[test]
fn criterion_05_unit_flux_is_obstructed_exactly_for_the_glide_groups() {
    let mut infeasible = Vec::new();
    for name in GROUP_NAMES {
        let g = load_group(name).unwrap();
        let map = UnknownMap::new(&g);
        let mut sys = assemble_consistency_system(&g);
        sys.pin(map.a_index(1, 0), true);
        let feasible = solve(&sys).is_some();
        assert_eq!(
            feasible,
            g.is_symmorphic(),
            "{name}: unit flux feasibility must coincide with symmorphicity"
        );
        if !feasible {
            infeasible.push(name);
        }
    }
    assert_eq!(infeasible, vec!["pg", "pmg", "pgg", "p4g"]);
    println!("criterion 5: PASS - unit flux forbidden exactly for pg, pmg, pgg, p4g");
}

#[test]
fn criterion_06_pg_nontrivial_class_is_explicit_and_exhaustively_checked() {
    let g = load_group("pg").unwrap();
    let result = classify(&g);
    assert_eq!(result.representatives.len(), 2);
    let trivial = &result.representatives[0];
    let rep = &result.representatives[1];
    assert!(trivial.nonzero_labels().is_empty());
    assert_eq!(rep.nonzero_labels(), vec!["q[m][1]".to_string()]);

    let m = g.element_index("m").unwrap();
    for t1x in -2..=2 {
        for t1y in -2..=2 {
            for t2x in -2..=2i64 {
                for t2y in -2..=2i64 {
                    for r2 in [0, m] {
                        let g1 = SpaceGroupElement::new(vec![t1x, t1y], m);
                        let g2 = SpaceGroupElement::new(vec![t2x, t2y], r2);
                        let expected = if t2y.rem_euclid(2) == 1 { -1 } else { 1 };
                        assert_eq!(
                            evaluate(rep, &g1, &g2),
                            expected,
                            "nu({g1:?}, {g2:?}) must be (-1)^t2_y"
                        );
                        let e1 = SpaceGroupElement::new(vec![t1x, t1y], 0);
                        assert_eq!(evaluate(rep, &e1, &g2), 1, "identity rotation part is free");
                    }
                }
            }
        }
    }

    let report = check_cocycle(rep, 2);
    assert!(report.ok, "violation: {:?}", report.violation);
    assert!(report.exhaustive, "radius 2 must cover all residue combinations");
    assert!(
        are_equivalent(trivial, rep).is_none(),
        "the nontrivial class must not be a coboundary"
    );
    println!(
        "criterion 6: PASS - pg representative is (-1)^t2_y, cocycle over {} triples, inequivalent to trivial",
        report.triples_checked
    );
}

#[test]
fn criterion_07_clifford_table_covers_all_eight_columns() {
    // (sign of s_t * s_p, q) -> (negative squares, positive squares), degeneracy
    let table: [(i8, [u8; 2], (usize, usize), usize); 8] = [
        (1, [0, 0], (2, 2), 2),
        (1, [1, 0], (1, 3), 2),
        (1, [0, 1], (1, 3), 2),
        (1, [1, 1], (0, 4), 4),
        (-1, [0, 0], (4, 0), 4),
        (-1, [1, 0], (3, 1), 4),
        (-1, [0, 1], (3, 1), 4),
        (-1, [1, 1], (2, 2), 2),
    ];
    for (sign, q, expected_sig, expected_d) in table {
        for (s_t, s_p) in [(1, sign), (sign, 1), (-1, -sign)] {
            let setting = SymmetrySetting::new(s_t, s_p, q).unwrap();
            let sig = signature(&setting).unwrap();
            assert_eq!(sig, expected_sig, "signature for s_t={s_t} s_p={s_p} q={q:?}");
            let irrep = classify_clifford(sig.0, sig.1);
            assert_eq!(
                irrep.band_degeneracy, expected_d,
                "degeneracy for s_t={s_t} s_p={s_p} q={q:?}"
            );
        }
    }
    println!("criterion 7: PASS - all eight sign/projective columns reproduce the table");
}

#[test]
fn criterion_08_winding_numbers_with_controls() {
    let rep = two_band_rep();
    for grid in [16, 64, 256] {
        assert_eq!(winding_number(&rep.l_x, 0, grid).unwrap(), 1, "x winding at grid {grid}");
        assert_eq!(winding_number(&rep.l_y, 1, grid).unwrap(), 1, "y winding at grid {grid}");
    }
    let constant = MomentumOperator::unitary(GaussMat::identity(2), [0, 0]);
    assert_eq!(winding_number(&constant, 0, 64).unwrap(), 0, "constant loop control");
    let double = MomentumOperator::unitary(GaussMat::identity(2), [2, 0]);
    assert_eq!(winding_number(&double, 0, 64).unwrap(), 2, "doubled phase control");
    println!("criterion 8: PASS - unit winding in both directions, controls 0 and 2");
}

#[test]
fn criterion_09_measured_degeneracies_match_the_prediction() {
    let start = Instant::now();
    let setting = SymmetrySetting::new(1, 1, [1, 1]).unwrap();
    let four = four_band_rep(&setting).unwrap();
    let report = degeneracy_check(&four, 20, 0x5EED).unwrap();
    assert_eq!(report.samples, 20);
    assert_eq!(report.min_multiplicity, 4, "four-band spectra must be fourfold");
    assert!(report.multiplicities.iter().all(|&m| m == 4));

    let two = two_band_rep();
    let report2 = degeneracy_check(&two, 20, 0x5EED).unwrap();
    assert_eq!(report2.min_multiplicity, 2, "two-band spectra must be twofold");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 5, "degeneracy checks took {elapsed:?}, budget 5s");
    println!("criterion 9: PASS - degeneracies 4 and 2 over 20 samples each ({elapsed:?})");
}

#[test]
fn criterion_10_structural_invariants_of_every_layer() {
    // Smith normal form on random integer matrices
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97);
    for trial in 0..1000 {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=6);
        let entries: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        let a = ZMat::from_rows(&entries);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d, "UAV = D failed on trial {trial}");
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    assert_eq!(*snf.d.get(i, j), BigInt::from(0), "off-diagonal in trial {trial}");
                }
            }
        }
        let div = snf.divisors();
        for w in div.windows(2) {
            assert_eq!(&w[1] % &w[0], BigInt::from(0), "divisibility chain in trial {trial}");
        }
        for m in [&snf.u, &snf.v] {
            let det = m.det();
            assert!(
                det == BigInt::from(1) || det == BigInt::from(-1),
                "transform not unimodular in trial {trial}"
            );
        }
    }

    // the boundary of a boundary vanishes in every constructed total complex
    for name in COMPLEX_NAMES {
        let g = load_group(name).unwrap();
        let cx = load_complex(name).unwrap();
        let tc = borel_total_complex(&g, &cx, 5);
        assert!(tc.validate().is_empty(), "{name}: malformed total complex");
        for i in 0..tc.boundaries.len() - 1 {
            assert!(
                tc.boundaries[i].mul(&tc.boundaries[i + 1]).is_zero(),
                "{name}: boundary {} after boundary {} is nonzero",
                i + 1,
                i + 2
            );
        }
    }

    // every coboundary satisfies the homogeneous consistency system
    for name in GROUP_NAMES {
        let g = load_group(name).unwrap();
        let sys = assemble_consistency_system(&g);
        assert!(
            sys.constant.iter().all(|&c| c == 0),
            "{name}: consistency system must be homogeneous"
        );
        for (k, v) in coboundary_space(&g).iter().enumerate() {
            assert!(
                sys.is_satisfied_by(v),
                "{name}: coboundary basis vector {k} violates the consistency equations"
            );
        }
    }
    println!(
        "criterion 10: PASS - 1000 Smith forms verified, boundaries square to zero, coboundaries lie in the kernel"
    );
}
