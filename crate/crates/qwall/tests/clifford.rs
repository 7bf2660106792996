//! End-to-end checks of the Clifford-algebra layer: the degeneracy table over
//! all eight symmetry columns, exact operator algebra in the shipped band
//! representations, determinant winding numbers, and the forced eigenvalue
//! multiplicities of symmetrized random Hamiltonians.

use qwall::clifford::{
    check_algebra, classify_clifford, degeneracy_check, degeneracy_check_with_closure,
    four_band_rep, minimal_bands, signature, symmetrizer_closure, two_band_rep, winding_number,
    CliffordError, DivisionAlgebra, GaussMat, MomentumOperator, SymmetrySetting,
};

/// One column per symmetry setting: (s_t * s_p, q) -> (n, m, D).
/// n and m count Clifford generators squaring to -1 and +1; D is the minimal
/// complex band degeneracy.
const DEGENERACY_TABLE: [(i8, [u8; 2], (usize, usize), usize); 8] = [
    (1, [0, 0], (2, 2), 2),
    (1, [1, 0], (1, 3), 2),
    (1, [0, 1], (1, 3), 2),
    (1, [1, 1], (0, 4), 4),
    (-1, [0, 0], (4, 0), 4),
    (-1, [1, 0], (3, 1), 4),
    (-1, [0, 1], (3, 1), 4),
    (-1, [1, 1], (2, 2), 2),
];

#[test]
fn degeneracy_table_covers_all_eight_columns() {
    for (s_prod, q, (n, m), d) in DEGENERACY_TABLE {
        // realize the product sign through either factor; the signature only
        // sees s_t * s_p
        for (s_t, s_p) in [(1, s_prod), (s_prod, 1), (-1, -s_prod)] {
            let setting = SymmetrySetting::new(s_t, s_p, q).unwrap();
            assert_eq!(
                signature(&setting).unwrap(),
                (n, m),
                "signature for s={s_prod:+}, q={q:?}"
            );
            assert_eq!(
                minimal_bands(&setting).unwrap(),
                d,
                "degeneracy for s={s_prod:+}, q={q:?}"
            );
        }
    }
    // the two four-fold classes on the + side and the - (1,1) class are the
    // quaternionic and real columns respectively
    assert_eq!(classify_clifford(0, 4).division, DivisionAlgebra::H);
    assert_eq!(classify_clifford(2, 2).division, DivisionAlgebra::R);
}

#[test]
fn four_band_operators_realize_their_setting() {
    let setting = SymmetrySetting::new(1, 1, [1, 1]).unwrap();
    let rep = four_band_rep(&setting).unwrap();
    assert_eq!(rep.bands, 4);
    assert_eq!(minimal_bands(&setting).unwrap(), 4);

    let checks = check_algebra(&rep);
    assert_eq!(checks.len(), 12);
    for check in &checks {
        assert!(check.holds, "relation failed: {}", check.relation);
    }

    // the only shipped point-symmetric construction is this column
    for (s_t, s_p, q) in [
        (-1i8, -1i8, [1u8, 1u8]),
        (1, 1, [0, 0]),
        (1, 1, [1, 0]),
        (1, -1, [1, 1]),
    ] {
        let err = four_band_rep(&SymmetrySetting { s_t, s_p, q }).unwrap_err();
        assert!(
            matches!(err, CliffordError::NoShippedConstruction { .. }),
            "expected refusal for ({s_t},{s_p},{q:?})"
        );
    }
}

#[test]
fn two_band_translations_anticommute_exactly() {
    let rep = two_band_rep();
    assert!(rep.pt.is_none());
    for check in check_algebra(&rep) {
        assert!(check.holds, "relation failed: {}", check.relation);
    }
}

#[test]
fn winding_numbers_are_grid_independent() {
    let two = two_band_rep();
    let four = four_band_rep(&SymmetrySetting::new(1, 1, [1, 1]).unwrap()).unwrap();
    for grid in [16, 64, 256] {
        assert_eq!(winding_number(&two.l_x, 0, grid).unwrap(), 1);
        assert_eq!(winding_number(&two.l_y, 1, grid).unwrap(), 1);
        assert_eq!(winding_number(&four.l_x, 0, grid).unwrap(), 2);
        assert_eq!(winding_number(&four.l_y, 1, grid).unwrap(), 2);
        // transverse direction carries no phase at all
        assert_eq!(winding_number(&two.l_x, 1, grid).unwrap(), 0);
        assert_eq!(winding_number(&four.l_y, 0, grid).unwrap(), 0);
    }
}

#[test]
fn winding_controls_and_guards() {
    // constant unitary: no winding
    let const_u = MomentumOperator::unitary(
        GaussMat::from_rows(&[&[(0, 0), (1, 0)], &[(-1, 0), (0, 0)]]),
        [0, 0],
    );
    // exp(i k_x) on two bands: determinant winds twice
    let double = MomentumOperator::unitary(GaussMat::identity(2), [2, 0]);
    for grid in [16, 64, 256] {
        assert_eq!(winding_number(&const_u, 0, grid).unwrap(), 0);
        assert_eq!(winding_number(&double, 0, grid).unwrap(), 2);
    }

    // a single band with a half phase does not return to itself over the
    // zone, and must be rejected, not rounded
    let anti_periodic = MomentumOperator::unitary(GaussMat::identity(1), [1, 0]);
    assert!(matches!(
        winding_number(&anti_periodic, 0, 64),
        Err(CliffordError::NotPeriodic { direction: 0, .. })
    ));

    let two = two_band_rep();
    assert!(matches!(
        winding_number(&two.l_x, 2, 64),
        Err(CliffordError::InvalidDirection(2))
    ));
    assert!(matches!(
        winding_number(&two.l_x, 0, 4),
        Err(CliffordError::GridTooCoarse(4))
    ));
    let t = MomentumOperator {
        matrix: GaussMat::identity(2),
        phase_half: [0, 0],
        antiunitary: true,
        inverts_k: true,
    };
    assert!(matches!(
        winding_number(&t, 0, 64),
        Err(CliffordError::WindingUndefined)
    ));
}

#[test]
fn symmetrization_forces_the_tabulated_degeneracy() {
    let four = four_band_rep(&SymmetrySetting::new(1, 1, [1, 1]).unwrap()).unwrap();
    let closure = symmetrizer_closure(&four);
    assert_eq!(closure.len(), 16);
    assert_eq!(closure.iter().filter(|(_, anti)| *anti).count(), 8);

    let report = degeneracy_check(&four, 25, 0xC11F).unwrap();
    assert_eq!(report.samples, 25);
    assert!(
        report.multiplicities.iter().all(|&m| m == 4),
        "every four-band sample must be exactly four-fold degenerate, got {:?}",
        report.multiplicities
    );
    assert_eq!(report.min_multiplicity, 4);

    let two = two_band_rep();
    assert_eq!(symmetrizer_closure(&two).len(), 8);
    let report = degeneracy_check(&two, 25, 0xC11F).unwrap();
    assert!(report.multiplicities.iter().all(|&m| m == 2));

    // control: with no symmetry to enforce, random spectra are simple
    let control = degeneracy_check_with_closure(
        4,
        &[(GaussMat::identity(4), false)],
        25,
        0xC11F,
    )
    .unwrap();
    assert_eq!(control.min_multiplicity, 1);
}

#[test]
fn degeneracy_matches_clifford_prediction_per_rep() {
    // the four-band rep realizes the (+, q=(1,1)) column, whose minimal
    // degeneracy is 4; the translation-only rep shows the generic pi-flux
    // doubling
    let setting = SymmetrySetting::new(1, 1, [1, 1]).unwrap();
    let rep = four_band_rep(&setting).unwrap();
    let predicted = minimal_bands(&setting).unwrap();
    let measured = degeneracy_check(&rep, 20, 7).unwrap().min_multiplicity;
    assert_eq!(predicted, measured);
    assert_eq!(rep.bands, predicted);
}
