use std::sync::Arc;

use exact_field::{int, parse_mpoly, parse_rfunc, MPoly, RFunc, VarTable};
use lattice_model::*;
use proptest::prelude::*;
use quiver_fixedpoints::{enumerate_fixed_points, FixedPoint, Permutation, SpinProfile};
use shuffle_weights::weight_function;

fn fp(parts: &[u32]) -> FixedPoint {
    FixedPoint(parts.to_vec())
}

fn var(vars: &Arc<VarTable>, name: &str) -> MPoly {
    MPoly::var_named(vars, name).unwrap()
}

fn poly(vars: &Arc<VarTable>, text: &str) -> MPoly {
    parse_mpoly(vars, text).unwrap()
}

fn rf(vars: &Arc<VarTable>, text: &str) -> RFunc {
    parse_rfunc(vars, text).unwrap()
}

fn ys(vars: &Arc<VarTable>, v: usize) -> Vec<MPoly> {
    (1..=v).map(|i| var(vars, &format!("y_{i}"))).collect()
}

#[test]
fn two_by_two_states_and_weights() {
    let profile = SpinProfile::symbolic(2);
    let vars = profile.var_table(2, &[]);
    let states = enumerate_states(&profile, 2, &fp(&[1, 1])).unwrap();
    assert_eq!(states.len(), 2);
    assert_eq!(states[0].vertical, vec![vec![1, 1], vec![0, 1], vec![0, 0]]);
    assert_eq!(states[1].vertical, vec![vec![1, 1], vec![1, 0], vec![0, 0]]);
    let w0 = boltzmann_weight(&states[0], &profile, &vars).unwrap();
    let w1 = boltzmann_weight(&states[1], &profile, &vars).unwrap();
    assert_eq!(w0, poly(&vars, "4*l_1*l_2*hbar^2*(y_1 - z_2 - (l_2 - 2)*hbar)*(y_2 - z_1 + l_1*hbar)"));
    assert_eq!(w1, poly(&vars, "4*l_1*l_2*hbar^2*(y_1 - z_1 + (l_1 - 2)*hbar)*(y_2 - z_2 - l_2*hbar)"));

    let total = partition_function(&profile, 2, &fp(&[1, 1]), &vars).unwrap();
    let w_id = weight_function(&Permutation::identity(2), &fp(&[1, 1]), &profile, &vars).unwrap().value;
    assert_eq!(total, &poly(&vars, "4*l_1*l_2*hbar^2") * &w_id);
}

#[test]
fn empty_lattice() {
    let profile = SpinProfile::new(&[2, 1]).unwrap();
    let vars = profile.var_table(0, &[]);
    let states = enumerate_states(&profile, 0, &fp(&[0, 0])).unwrap();
    assert_eq!(states.len(), 1);
    assert_eq!(boltzmann_weight(&states[0], &profile, &vars).unwrap(), MPoly::one(&vars));
    assert_eq!(partition_function(&profile, 0, &fp(&[0, 0]), &vars).unwrap(), MPoly::one(&vars));
}

#[test]
fn single_straight_vertex() {
    let profile = SpinProfile::symbolic(1);
    let vars = profile.var_table(1, &[]);
    let (l, u, h) = (var(&vars, "l_1"), &var(&vars, "y_1") - &var(&vars, "z_1"), var(&vars, "hbar"));
    let empty = VertexConfig { left: 0, right: 0, bottom: 0, top: 0 };
    assert_eq!(empty.weight(&l, &u, &h), poly(&vars, "y_1 - z_1 - l_1*hbar"));
    let state = LatticeState { boundary: fp(&[1]), vertical: vec![vec![1], vec![0]] };
    assert_eq!(boltzmann_weight(&state, &profile, &vars).unwrap(), poly(&vars, "2*l_1*hbar"));
}

#[test]
fn vertex_weight_table() {
    let vars = VarTable::from_names(&["hbar", "l", "u"]).unwrap();
    let (h, l, u) = (var(&vars, "hbar"), var(&vars, "l"), var(&vars, "u"));
    let cfg = |left, right, bottom| VertexConfig::from_conservation(left, bottom, right).unwrap();
    assert_eq!(cfg(0, 0, 2).weight(&l, &u, &h), poly(&vars, "u - (l - 4)*hbar"));
    assert_eq!(cfg(1, 1, 2).weight(&l, &u, &h), poly(&vars, "u + (l - 4)*hbar"));
    assert_eq!(cfg(0, 1, 2).weight(&l, &u, &h), poly(&vars, "4*hbar"));
    assert_eq!(cfg(1, 0, 2).weight(&l, &u, &h), poly(&vars, "2*(l - 2)*hbar"));
    assert!(VertexConfig::from_conservation(0, 0, 1).is_none());
    assert!(!VertexConfig { left: 1, right: 0, bottom: 3, top: 4 }.is_valid(Some(3)));
}

#[test]
fn pathless_lattice_weight() {
    // No paths enter from the West: every vertex is empty with m = 0.
    let ell = [1u32, 2, 3];
    let v = 2;
    let profile = SpinProfile::new(&ell).unwrap();
    let vars = profile.var_table(v, &[]);
    let h = var(&vars, "hbar");
    let ys = ys(&vars, v);
    let mut bra = TensorCovector::basis(&vars, &[0, 0]).unwrap();
    for (j, &l) in ell.iter().enumerate() {
        let col = Column { l: MPoly::from_int(&vars, l as i64), bound: Some(l), x: var(&vars, &format!("z_{}", j + 1)) };
        bra = bra.apply(&column_transfer(&col, 0, 0, &ys, &h).unwrap());
    }
    let got = bra.pair(&TensorVector::basis(&vars, &[0, 0]).unwrap());
    let mut want = MPoly::one(&vars);
    for i in 1..=v {
        for (j, l) in ell.iter().enumerate() {
            want = &want * &poly(&vars, &format!("y_{i} - z_{} - {l}*hbar", j + 1));
        }
    }
    assert_eq!(got, RFunc::from_poly(want));
    assert_eq!(enumerate_states(&profile, 0, &fp(&[0, 0, 0])).unwrap().len(), 1);
}

#[test]
fn figure_state_is_enumerated() {
    let profile = SpinProfile::new(&[1, 1, 1, 2, 1, 1]).unwrap();
    let boundary = fp(&[0, 1, 0, 2, 0, 1]);
    let states = enumerate_states(&profile, 4, &boundary).unwrap();
    let figure = vec![
        vec![0, 1, 0, 2, 0, 1],
        vec![0, 1, 0, 1, 0, 1],
        vec![0, 0, 0, 2, 0, 0],
        vec![0, 0, 0, 1, 0, 0],
        vec![0, 0, 0, 0, 0, 0],
    ];
    assert!(states.iter().any(|s| s.vertical == figure));
    for s in &states {
        s.validate(&profile).unwrap();
    }
}

#[test]
fn invalid_boundary_is_rejected() {
    let profile = SpinProfile::new(&[1, 1]).unwrap();
    assert!(matches!(enumerate_states(&profile, 2, &fp(&[2, 0])), Err(LatticeError::Boundary(_))));
    assert!(matches!(enumerate_states(&profile, 1, &fp(&[1, 0, 0])), Err(LatticeError::Boundary(_))));
    let vars = profile.var_table(1, &[]);
    assert!(transfer_partition_function(&profile, &fp(&[0, 2]), &vars).is_err());
}

#[test]
fn state_json_round_trip_and_ascii() {
    let profile = SpinProfile::new(&[1, 1]).unwrap();
    let states = enumerate_states(&profile, 2, &fp(&[1, 1])).unwrap();
    for s in &states {
        let json = s.to_json();
        assert_eq!(json["v"], 2);
        assert_eq!(json["w"], 2);
        assert_eq!(&LatticeState::from_json(&json).unwrap(), s);
    }
    let bad = serde_json::json!({ "v": 1, "w": 1, "boundary": [1], "vertical": [[1], [1]] });
    assert!(LatticeState::from_json(&bad).and_then(|s| s.validate(&profile)).is_err());

    let art = states[0].render_ascii();
    let lines: Vec<&str> = art.lines().collect();
    assert_eq!(lines.len(), 2 * 2 + 2);
    assert!(lines[1].starts_with("y_1"));
    assert!(lines[1].contains("---+"));
    assert!(lines[5].contains("z_1") && lines[5].contains("z_2"));
    assert_eq!(art, states[0].render_ascii());
}

#[test]
fn theorem_small_profiles() {
    for (ell, v) in [(vec![1, 1], 1), (vec![2, 2], 2), (vec![1, 2, 1], 2)] {
        let profile = SpinProfile::new(&ell).unwrap();
        let report = theorem_tilde_w_check(&profile, v).unwrap();
        assert!(report.passed(), "{}", report.to_json());
        assert_eq!(report.count("tildeW").0, enumerate_fixed_points(&profile, v).len());
    }
    let report = theorem_tilde_w_check(&SpinProfile::symbolic(2), 2).unwrap();
    assert!(report.passed(), "{}", report.to_json());
}

#[test]
fn theorem_prefactor_two_columns() {
    let profile = SpinProfile::symbolic(2);
    let vars = profile.var_table(2, &[]);
    assert_eq!(theorem_prefactor(&profile, &fp(&[1, 1]), &vars).unwrap(), poly(&vars, "4*l_1*l_2*hbar^2"));
    // (-1)^{2(2 + 2 - 1 - 2)} (2hbar)^2 l_1 (l_1 - 1).
    assert_eq!(theorem_prefactor(&profile, &fp(&[2, 0]), &vars).unwrap(), poly(&vars, "4*l_1*(l_1 - 1)*hbar^2"));
    let vars = profile.var_table(1, &[]);
    // Exponents 1 * (1 + 2 - 1 - 1) and 1 * (1 + 2 - 2 - 1).
    assert_eq!(theorem_prefactor(&profile, &fp(&[1, 0]), &vars).unwrap(), poly(&vars, "-2*l_1*hbar"));
    assert_eq!(theorem_prefactor(&profile, &fp(&[0, 1]), &vars).unwrap(), poly(&vars, "2*l_2*hbar"));
}

#[test]
fn transfer_on_empty_column() {
    let v = 3;
    let vars = fbasis_table(v);
    let (h, x, l) = (var(&vars, "hbar"), var(&vars, "x"), var(&vars, "l"));
    let ys = ys(&vars, v);
    let col = Column { l: l.clone(), bound: None, x: x.clone() };
    let t = column_transfer(&col, 0, 0, &ys, &h).unwrap();
    let image = TensorVector::basis(&vars, &[0, 0, 0]).unwrap().apply(&t);
    let mut want = MPoly::one(&vars);
    for y in &ys {
        want = &want * &(&(y - &x) - &(&l * &h));
    }
    for a in binary_basis(v) {
        let expect = if a == [0, 0, 0] { RFunc::from_poly(want.clone()) } else { RFunc::zero(&vars) };
        assert_eq!(image.coeff(&a), &expect, "{a:?}");
    }
}

#[test]
fn transfer_conserves_occupation() {
    let v = 3;
    let vars = fbasis_table(v);
    let (h, x) = (var(&vars, "hbar"), var(&vars, "x"));
    let ys = ys(&vars, v);
    for m in 0..=2 {
        let col = Column { l: MPoly::from_int(&vars, 2), bound: Some(2), x: x.clone() };
        let t = column_transfer(&col, m, 0, &ys, &h).unwrap();
        for b in binary_basis(v) {
            for a in binary_basis(v) {
                let diff = b.iter().sum::<u32>() as i64 - a.iter().sum::<u32>() as i64;
                if diff != m as i64 {
                    assert!(t.entry(&b, &a).is_zero(), "m = {m}, {b:?}, {a:?}");
                }
            }
        }
    }
}

#[test]
fn sixvertex_entries_and_unitarity() {
    let vars = VarTable::from_names(&["hbar", "u", "w"]).unwrap();
    let (h, u) = (RFunc::from_poly(var(&vars, "hbar")), RFunc::from_poly(var(&vars, "u")));
    assert!(sixvertex_entry([1, 1], [1, 1], &u, &h).is_one());
    assert!(sixvertex_entry([0, 0], [0, 0], &u, &h).is_one());
    assert_eq!(sixvertex_entry([1, 0], [0, 1], &u, &h), rf(&vars, "u/(u - 2*hbar)"));
    assert_eq!(sixvertex_entry([0, 1], [0, 1], &u, &h), rf(&vars, "-2*hbar/(u - 2*hbar)"));
    assert_eq!(sixvertex_entry_signed([0, 1], [0, 1], &u, &h, 1), rf(&vars, "2*hbar/(u - 2*hbar)"));
    assert!(sixvertex_entry([1, 1], [0, 0], &u, &h).is_zero());

    let w = RFunc::from_poly(var(&vars, "w"));
    for sign in [1, -1] {
        let r1 = sixvertex_r_signed(&(&u - &w), &h, sign);
        let r2 = sixvertex_r_signed(&(&w - &u), &h, sign);
        assert!(r1.matrix.try_mul(&r2.matrix).unwrap().is_identity(), "sign {sign}");
    }
}

#[test]
fn sixvertex_identities() {
    let report = check_sixvertex_identities().unwrap();
    assert!(report.passed(), "{}", report.to_json());
    for check in ["entries", "ybe", "unitarity", "rll"] {
        assert!(report.count(check).0 > 0, "{check}");
    }
    assert!(report.notes()[0].contains("Yang-Baxter fails"));
}

#[test]
fn tilded_kets_of_the_example() {
    let vars = fbasis_table(4);
    let h = var(&vars, "hbar");
    let ys = ys(&vars, 4);
    let beta = |i: usize, j: usize| rf(&vars, &format!("(y_{i} - y_{j})/(y_{i} - y_{j} - 2*hbar)"));
    let gamma = |i: usize, j: usize| rf(&vars, &format!("-2*hbar/(y_{i} - y_{j} - 2*hbar)"));

    let ket = tilde_ket_with(&[0, 0, 1, 0], &ket_permutation(&[0, 0, 1, 0]), &ys, &h).unwrap();
    assert_eq!(ket.coeff(&[0, 0, 1, 0]), &beta(3, 4));
    assert_eq!(ket.coeff(&[0, 0, 0, 1]), &gamma(3, 4));
    assert_eq!(ket.coeffs.iter().filter(|c| !c.is_zero()).count(), 2);

    let ket = tilde_ket_with(&[0, 1, 0, 0], &ket_permutation(&[0, 1, 0, 0]), &ys, &h).unwrap();
    assert_eq!(ket.coeff(&[0, 1, 0, 0]), &(&beta(2, 3) * &beta(2, 4)));
    assert_eq!(ket.coeff(&[0, 0, 1, 0]), &(&gamma(2, 3) * &beta(2, 4)));
    assert_eq!(ket.coeff(&[0, 0, 0, 1]), &gamma(2, 4));
    assert_eq!(ket.coeffs.iter().filter(|c| !c.is_zero()).count(), 3);

    let b = [1, 1, 0, 1];
    let bra = tilde_bra(&b, &ys, &h).unwrap();
    let k_inv = kappa(&b, &ys, &h).inv().unwrap();
    assert_eq!(bra.coeff(&[1, 1, 0, 1]), &(&k_inv * &beta(4, 3)));
    assert_eq!(bra.coeff(&[1, 1, 1, 0]), &(&k_inv * &gamma(4, 3)));
    assert_eq!(bra.coeffs.iter().filter(|c| !c.is_zero()).count(), 2);
    let expected_kappa = &(&beta(1, 3) * &beta(2, 3)) * &beta(4, 3);
    assert_eq!(kappa(&b, &ys, &h), expected_kappa);
}

#[test]
fn sorted_kets_are_fixed_and_representatives_agree() {
    let vars = fbasis_table(4);
    let h = var(&vars, "hbar");
    let ys = ys(&vars, 4);
    for a in [[0, 0, 0, 0], [0, 0, 1, 1], [0, 1, 1, 1], [1, 1, 1, 1]] {
        let ket = tilde_ket_with(&a, &ket_permutation(&a), &ys, &h).unwrap();
        assert_eq!(ket, TensorVector::basis(&vars, &a).unwrap());
    }
    for (a, other) in [
        ([0, 0, 1, 0], vec![1, 0, 3, 2]),
        ([0, 1, 0, 1], vec![2, 0, 3, 1]),
        ([1, 0, 1, 0], vec![3, 1, 2, 0]),
    ] {
        assert_ne!(ket_permutation(&a), other);
        let minimal = tilde_ket_with(&a, &ket_permutation(&a), &ys, &h).unwrap();
        assert_eq!(tilde_ket_with(&a, &other, &ys, &h).unwrap(), minimal, "{a:?}");
    }
    assert!(tilde_ket_with(&[0, 0, 1, 0], &[0, 1, 2, 3], &ys, &h).is_err());
}

#[test]
fn sort_helpers() {
    assert_eq!(sort(&[1, 0, 1, 0]), vec![0, 0, 1, 1]);
    assert_eq!(rsort(&[1, 0, 1, 0]), vec![1, 1, 0, 0]);
    assert_eq!(ket_permutation(&[0, 0, 1, 0]), vec![0, 1, 3, 2]);
    assert_eq!(bra_permutation(&[1, 1, 0, 1]), vec![0, 1, 3, 2]);
}

#[test]
fn fbasis_duality() {
    for v in 1..=4 {
        let vars = fbasis_table(v);
        let fb = f_basis(&ys(&vars, v), &var(&vars, "hbar")).unwrap();
        assert_eq!(fb.duality_defect(), None, "v = {v}");
    }
}

#[test]
fn lemma_lm_worked_examples() {
    let vars = fbasis_table(4);
    let (h, x, l) = (var(&vars, "hbar"), var(&vars, "x"), var(&vars, "l"));
    let ys = ys(&vars, 4);
    let t = column_transfer(&Column { l: l.clone(), bound: None, x: x.clone() }, 2, 0, &ys, &h).unwrap();
    let b = [1, 1, 0, 1];
    let bra = tilde_bra(&b, &ys, &h).unwrap();

    let a = [0, 0, 1, 0];
    assert!(!t.entry(&b, &a).is_zero());
    let ket = tilde_ket_with(&a, &ket_permutation(&a), &ys, &h).unwrap();
    assert!(bra.pair(&ket.apply(&t)).is_zero());
    assert!(lemma_lm_closed_form(&l, 2, &b, &a, &x, &ys, &h).is_zero());

    let a = [0, 1, 0, 0];
    let ket = tilde_ket_with(&a, &ket_permutation(&a), &ys, &h).unwrap();
    let want = rf(
        &vars,
        "4*hbar^2*l*(l - 1)*(y_1 - y_3 - 2*hbar)*(y_4 - y_3 - 2*hbar)/((y_1 - y_3)*(y_4 - y_3))\
         *(y_2 - x + l*hbar)*(y_3 - x - l*hbar)",
    );
    assert_eq!(bra.pair(&ket.apply(&t)), want);
    assert_eq!(lemma_lm_closed_form(&l, 2, &b, &a, &x, &ys, &h), want);

    assert!(lemma_lm_closed_form(&l, 1, &[0, 1, 1], &[1, 0, 1], &x, &ys[..3], &h).is_zero());
}

#[test]
fn lemma_lm_small() {
    for (l, m, v) in [(Some(1), 1, 2), (Some(2), 2, 3), (Some(3), 1, 3), (None, 1, 3)] {
        let report = lemma_lm_check(l, m, v).unwrap();
        assert!(report.passed(), "{}", report.to_json());
        assert_eq!(report.count("lm_iii").0, 1 << (2 * v));
    }
    assert!(lemma_lm_check(Some(1), 2, 2).is_err());
}

#[test]
fn thick_crossing_is_solvable() {
    let report = yaybe_check(1, 1).unwrap();
    assert_eq!(report.count("solvable"), (1, 0));
    assert_eq!(report.notes().len(), 4);
}

#[test]
fn embedded_two_site_operator() {
    let vars = VarTable::from_names(&["hbar", "u"]).unwrap();
    let (h, u) = (RFunc::from_poly(var(&vars, "hbar")), RFunc::from_poly(var(&vars, "u")));
    let r = sixvertex_r(&u, &h);
    let op = embed_two_site(&r, 1, 3).unwrap();
    assert_eq!(op.entry(&[1, 1, 0], &[1, 0, 1]), r.entry(&[1, 0], &[0, 1]));
    assert!(op.entry(&[0, 1, 0], &[1, 0, 1]).is_zero());
    assert_eq!(op.entry(&[0, 0, 0], &[0, 0, 0]), RFunc::from_poly(MPoly::constant(&vars, int(1))));
}

fn profile_and_boundary() -> impl Strategy<Value = (Vec<u32>, Vec<u32>)> {
    prop::collection::vec(1u32..=3, 1..=3).prop_flat_map(|ell| {
        let parts: Vec<_> = ell.iter().map(|&l| 0..=l).collect();
        (Just(ell), parts).prop_filter("v <= 3", |(_, b)| b.iter().sum::<u32>() <= 3)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn states_conserve_at_every_vertex((ell, boundary) in profile_and_boundary()) {
        let profile = SpinProfile::new(&ell).unwrap();
        let v = boundary.iter().sum::<u32>();
        for state in enumerate_states(&profile, v, &fp(&boundary)).unwrap() {
            state.validate(&profile).unwrap();
            for row in state.vertices() {
                for (j, cfg) in row.iter().enumerate() {
                    prop_assert!(cfg.is_valid(Some(ell[j])), "{:?}", cfg);
                }
            }
            prop_assert_eq!(state.vertical[v as usize].iter().sum::<u32>(), 0);
        }
    }

    #[test]
    fn partition_function_is_symmetric((ell, boundary) in profile_and_boundary()) {
        let profile = SpinProfile::new(&ell).unwrap();
        let v = boundary.iter().sum::<u32>() as usize;
        let vars = profile.var_table(v, &[]);
        let z = partition_function(&profile, v as u32, &fp(&boundary), &vars).unwrap();
        for i in 1..v {
            let mut perm: Vec<usize> = (0..vars.len()).collect();
            perm.swap(vars.require(&format!("y_{i}")).unwrap(), vars.require(&format!("y_{}", i + 1)).unwrap());
            prop_assert_eq!(z.permute_vars(&perm), z.clone());
        }
        prop_assert_eq!(transfer_partition_function(&profile, &fp(&boundary), &vars).unwrap(), z);
    }
}
