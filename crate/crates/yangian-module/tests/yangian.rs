use std::sync::Arc;

use exact_field::{int, ratio, residue_simple_pole, ExactScalar, MPoly, RFunc, VarTable};
use proptest::prelude::*;
use quiver_fixedpoints::{addible_boxes, enumerate_fixed_points, removable_boxes, FixedPoint, SpinProfile};
use yangian_module::*;

fn profile(ell: &[u32]) -> SpinProfile {
    SpinProfile::new(ell).unwrap()
}

fn fp(p: &[u32]) -> FixedPoint {
    FixedPoint(p.to_vec())
}

fn var(vars: &Arc<VarTable>, name: &str) -> MPoly {
    MPoly::var_named(vars, name).unwrap()
}

/// `(num)/(den)` for polynomial numerator and denominator.
fn frac(num: MPoly, den: MPoly) -> RFunc {
    RFunc::new(num, den).unwrap()
}

#[test]
fn psi_eigenvalue_examples() {
    for ell in 1..=3i64 {
        let p = profile(&[ell as u32]);
        let m = YangianModule::new(&p).unwrap();
        let vars = m.vars().clone();
        let (u, z, h) = (var(&vars, "u"), var(&vars, "z_1"), var(&vars, "hbar"));
        let lh = h.scale(&int(ell));
        let empty = m.psi_eigenvalue(&fp(&[0])).unwrap();
        assert_eq!(empty, frac(&(&u - &z) - &lh, &(&u - &z) + &lh));
        let full = m.psi_eigenvalue(&fp(&[ell as u32])).unwrap();
        let two_h = h.scale(&int(2));
        assert_eq!(full, frac(&(&(&u - &z) + &lh) + &two_h, &(&(&u - &z) - &lh) + &two_h));
    }
}

#[test]
fn psi_poles_are_simple_and_at_boxes() {
    for ell in [vec![1, 2], vec![2, 2], vec![3, 1]] {
        let p = profile(&ell);
        let m = YangianModule::new(&p).unwrap();
        let vars = m.vars().clone();
        let u = var(&vars, "u");
        let table = p.var_table(0, &["u"]);
        for v in 0..=4 {
            for lambda in enumerate_fixed_points(&p, v) {
                let psi = m.psi_eigenvalue(&lambda).unwrap();
                let mut expected = MPoly::one(&vars);
                for b in addible_boxes(&lambda, &p, &table).unwrap().into_iter().chain(removable_boxes(&lambda, &p, &table).unwrap()) {
                    expected = &expected * &(&u - &b.weight);
                }
                assert_eq!(psi.den().monic(), expected.monic(), "{lambda}");
            }
        }
    }
}

#[test]
fn psi_zero_counts_boxes() {
    for ell in [vec![2], vec![1, 3], vec![2, 1, 1]] {
        let p = profile(&ell);
        let m = YangianModule::new(&p).unwrap();
        let total: u32 = ell.iter().sum();
        for v in 0..=total {
            for lambda in m.basis(v) {
                let psi0 = m.psi_coefficients(&lambda, 0).unwrap().remove(0);
                assert_eq!(psi0, RFunc::from_int(m.vars(), 2 * v as i64 - total as i64));
            }
        }
        if let [l] = ell[..] {
            assert_eq!(m.psi_matrix(0, 0).unwrap().matrix.get(0, 0), &RFunc::from_int(m.vars(), -(l as i64)));
        }
    }
}

/// Series of `prod (u - a_k)/(u - b_k)` at infinity, coefficient of `u^-n`,
/// from the geometric expansion of each factor.
fn series_oracle(factors: &[(ExactScalar, ExactScalar)], order: usize) -> Vec<ExactScalar> {
    let mut acc = vec![int(0); order + 1];
    acc[0] = int(1);
    for (a, b) in factors {
        // (u - a)/(u - b) = 1 + (b - a) sum_i b^i u^(-i-1)
        let mut f = vec![int(0); order + 1];
        f[0] = int(1);
        let mut pw = int(1);
        for slot in f.iter_mut().skip(1) {
            *slot = (b - a) * &pw;
            pw *= b;
        }
        let mut next = vec![int(0); order + 1];
        for i in 0..=order {
            for j in 0..=order - i {
                next[i + j] += &acc[i] * &f[j];
            }
        }
        acc = next;
    }
    acc
}

#[test]
fn psi_coefficients_match_series_oracle() {
    let p = profile(&[2, 1]);
    let hbar = ratio(3, 7);
    let z = [ratio(-5, 2), ratio(11, 3)];
    let m = YangianModule::at_point(&p, &hbar, &z).unwrap();
    let ell = [2i64, 1];
    for v in 0..=3 {
        for lambda in m.basis(v) {
            let mut factors = Vec::new();
            for (j, &vj) in lambda.0.iter().enumerate() {
                for k in 0..vj {
                    let x = &z[j] - &hbar * int(ell[j] - 2 * k as i64);
                    factors.push((&x - &hbar * int(2), &x + &hbar * int(2)));
                }
                factors.push((&z[j] + &hbar * int(ell[j]), &z[j] - &hbar * int(ell[j])));
            }
            let series = series_oracle(&factors, 5);
            let got = m.psi_coefficients(&lambda, 4).unwrap();
            for r in 0..=4 {
                let want = &series[r + 1] / (&hbar * int(2));
                assert_eq!(got[r].as_constant(), Some(want), "{lambda} r={r}");
            }
        }
    }
}

#[test]
fn e_matrix_rank_one_examples() {
    for ell in 1..=4i64 {
        let p = profile(&[ell as u32]);
        let m = YangianModule::new(&p).unwrap();
        let vars = m.vars().clone();
        let (z, h) = (var(&vars, "z_1"), var(&vars, "hbar"));
        for v in 0..ell as u32 {
            let x = &z - &h.scale(&int(ell - 2 * v as i64));
            for k in 0..=3 {
                let got = m.e_matrix(k, v).unwrap().entry(&[v + 1], &[v]);
                let want = RFunc::from_poly(&x.pow(k) * &h.scale(&int(2 * (v as i64 - ell))));
                assert_eq!(got, want);
                let got = m.f_matrix(k, v).unwrap().entry(&[v], &[v + 1]);
                assert_eq!(got, RFunc::from_poly(x.pow(k).scale(&int(v as i64 + 1))));
            }
        }
        let top = m.e_matrix(0, ell as u32).unwrap();
        assert!(top.rows.is_empty());
        assert_eq!(top.cols, vec![vec![ell as u32]]);
    }
    // f_m(b_1) = (z - l hbar)^m b_0 for symbolic spin
    let p = SpinProfile::symbolic(1);
    let m = YangianModule::new(&p).unwrap();
    let vars = m.vars().clone();
    let x = &var(&vars, "z_1") - &(&var(&vars, "l_1") * &var(&vars, "hbar"));
    assert_eq!(m.f_matrix(2, 0).unwrap().entry(&[0], &[1]), RFunc::from_poly(x.pow(2)));
}

#[test]
fn e_matrix_two_columns() {
    let p = profile(&[1, 1]);
    let m = YangianModule::new(&p).unwrap();
    let vars = m.vars().clone();
    let (z1, z2, h) = (var(&vars, "z_1"), var(&vars, "z_2"), var(&vars, "hbar"));
    let e = m.e_matrix(0, 0).unwrap();
    assert_eq!(e.rows, vec![vec![1, 0], vec![0, 1]]);
    // Column 1: -2hbar times the framing factor of column 2 at x = z_1 - hbar.
    let x1 = &z1 - &h;
    let want1 = &RFunc::from_poly(h.scale(&int(-2))) * &frac(&(&x1 - &z2) - &h, &(&x1 - &z2) + &h);
    assert_eq!(e.entry(&[1, 0], &[0, 0]), want1);
    let x2 = &z2 - &h;
    let want2 = &RFunc::from_poly(h.scale(&int(-2))) * &frac(&(&x2 - &z1) - &h, &(&x2 - &z1) + &h);
    assert_eq!(e.entry(&[0, 1], &[0, 0]), want2);
    // Only the addible pattern is populated.
    let e = m.e_matrix(1, 1).unwrap();
    assert_eq!(e.rows, vec![vec![1, 1]]);
    assert!(!e.entry(&[1, 1], &[1, 0]).is_zero());
    assert!(!e.entry(&[1, 1], &[0, 1]).is_zero());
}

#[test]
fn support_follows_boxes() {
    let p = profile(&[2, 1, 2]);
    let m = YangianModule::new(&p).unwrap();
    for v in 0..5 {
        let e = m.e_matrix(1, v).unwrap();
        let f = m.f_matrix(1, v).unwrap();
        for (i, row) in e.rows.iter().enumerate() {
            for (j, col) in e.cols.iter().enumerate() {
                let adjacent = row.iter().zip(col).filter(|(a, b)| a != b).count() == 1;
                assert_eq!(!e.matrix.get(i, j).is_zero(), adjacent, "e {row:?} {col:?}");
            }
        }
        for (i, row) in f.rows.iter().enumerate() {
            for (j, col) in f.cols.iter().enumerate() {
                let adjacent = row.iter().zip(col).filter(|(a, b)| a != b).count() == 1;
                assert_eq!(!f.matrix.get(i, j).is_zero(), adjacent, "f {row:?} {col:?}");
            }
        }
    }
}

#[test]
fn commutator_diagonal_is_residue_at_infinity() {
    let p = profile(&[2, 1]);
    let m = YangianModule::new(&p).unwrap();
    let vars = m.vars().clone();
    let u = var(&vars, "u");
    let table = p.var_table(0, &["u"]);
    for v in 0..=3u32 {
        for (idx, lambda) in m.basis(v).iter().enumerate() {
            for (i, j) in [(0, 0), (1, 0), (1, 2)] {
                // [e_i, f_j] at (lambda, lambda)
                let mut ef = RFunc::zero(&vars);
                if v > 0 {
                    let e = m.e_matrix(i, v - 1).unwrap();
                    let f = m.f_matrix(j, v - 1).unwrap();
                    for k in 0..f.rows.len() {
                        ef = &ef + &(e.matrix.get(idx, k) * f.matrix.get(k, idx));
                    }
                }
                let e = m.e_matrix(i, v).unwrap();
                let f = m.f_matrix(j, v).unwrap();
                let mut fe = RFunc::zero(&vars);
                for k in 0..e.rows.len() {
                    fe = &fe + &(f.matrix.get(idx, k) * e.matrix.get(k, idx));
                }
                let comm = &ef - &fe;
                let integrand = &RFunc::from_poly(u.pow(i + j)) * &m.psi_eigenvalue(lambda).unwrap();
                // Res at infinity = -(sum of the finite residues), all at boxes.
                let mut res = RFunc::zero(&vars);
                for b in addible_boxes(lambda, &p, &table).unwrap().into_iter().chain(removable_boxes(lambda, &p, &table).unwrap()) {
                    res = &res - &residue_simple_pole(&integrand, m.u(), &RFunc::from_poly(b.weight)).unwrap();
                }
                assert_eq!(comm, res, "{lambda} ({i},{j})");
                // The sign +1 would need comm + res = 0.
                assert!(!(&comm + &res).is_zero() || comm.is_zero());
            }
        }
    }
}

#[test]
fn relations_rank_one() {
    let r = verify_yangian_relations(&profile(&[1]), 1, 2, Mode::Symbolic).unwrap();
    assert!(r.passed(), "{:?}", r.failures().next());
    for rel in ["Y1", "Y2e", "Y2f", "Y3e", "Y3f", "Y4e", "Y5"] {
        assert!(r.checks.iter().any(|c| c.relation == rel), "{rel} not exercised");
    }
}

#[test]
fn relations_two_columns() {
    let r = verify_yangian_relations(&profile(&[2, 3]), 3, 1, Mode::Symbolic).unwrap();
    assert!(r.passed(), "{:?}", r.failures().next());
    assert!(r.checks.iter().any(|c| c.relation == "Y4f"));
    let json = r.to_json();
    let first = &json.as_array().unwrap()[0];
    assert_eq!(first["status"], "pass");
    assert!(first.get("relation").is_some() && first.get("grade").is_some() && first.get("indices").is_some());
}

#[test]
fn y5_plus_sign_is_violated() {
    let r = verify_yangian_relations(&profile(&[2, 3]), 2, 1, Mode::Symbolic).unwrap();
    let (held, total) = r.y5_plus_sign;
    assert!(total > 0 && held < total);
    assert_eq!(Y5_SIGN, -1);
}

#[test]
fn relations_symbolic_spin() {
    let r = verify_yangian_relations(&SpinProfile::symbolic(1), 2, 1, Mode::Symbolic).unwrap();
    assert!(r.passed(), "{:?}", r.failures().next());
}

#[test]
fn corrupted_entry_is_reported() {
    let p = profile(&[1, 2]);
    let mut m = YangianModule::new(&p).unwrap();
    assert!(m.corrupt_e_entry(0, 1).unwrap());
    let r = m.verify_relations(2, 1, None).unwrap();
    assert!(!r.passed());
    let bad: Vec<&RelationCheck> = r.failures().collect();
    assert!(bad.iter().any(|c| c.relation == "Y5" && c.counterexample.is_some()));
    let json = r.to_json();
    assert!(json.as_array().unwrap().iter().any(|c| c["status"] == "fail" && c.get("counterexample").is_some()));
    let summary = r.summary("yangian");
    assert!(!summary.passed());
}

#[test]
fn randomized_three_columns() {
    let p = profile(&[1, 2, 1]);
    let r = verify_yangian_relations(&p, 3, 2, Mode::Randomized { seed: 11, trials: 4 }).unwrap();
    assert!(r.passed(), "{:?}", r.failures().next());
    assert!(r.checks.iter().all(|c| c.trial.is_some()));
    let again = verify_yangian_relations(&p, 3, 2, Mode::Randomized { seed: 11, trials: 4 }).unwrap();
    assert_eq!(r, again);
    assert!(verify_yangian_relations(&SpinProfile::symbolic(2), 1, 1, Mode::Randomized { seed: 1, trials: 1 }).is_err());
}

#[test]
fn randomized_detects_corruption() {
    let p = profile(&[1, 1, 1]);
    let (hbar, z) = sample_point(&p, 3, 0);
    let mut m = YangianModule::at_point(&p, &hbar, &z).unwrap();
    m.corrupt_e_entry(1, 0).unwrap();
    assert!(!m.verify_relations(2, 1, Some(0)).unwrap().passed());
}

#[test]
fn evaluation_module() {
    for ell in 1..=4 {
        let r = evaluation_rep_check(ell).unwrap();
        assert!(r.passed(), "l={ell}: {:?}", r.failures());
        assert!(r.count("ladder_e0").0 == ell as usize && r.count("ladder_f0").0 == ell as usize);
        assert!(!drinfeld_minus_shift_holds(ell).unwrap());
    }
}

#[test]
fn ladder_coefficients_spin_three() {
    // sl2 ladder: e_0 v_s = (l - s + 1) v_(s-1), f_0 v_s = (s + 1) v_(s+1)
    let p = profile(&[3]);
    let m = YangianModule::new(&p).unwrap();
    let vars = m.vars().clone();
    let half = [(vars.require("hbar").unwrap(), RFunc::constant(&vars, ratio(-1, 2)))];
    let binom = [1i64, 3, 3, 1];
    let mut e = Vec::new();
    let mut f = Vec::new();
    for s in 1..=3u32 {
        let raw = m.e_matrix(0, 3 - s).unwrap().entry(&[4 - s], &[3 - s]).substitute(&half).unwrap();
        e.push(&(&raw * &RFunc::from_int(&vars, binom[s as usize])) / &RFunc::from_int(&vars, binom[s as usize - 1]));
    }
    for s in 0..3u32 {
        let raw = m.f_matrix(0, 2 - s).unwrap().entry(&[2 - s], &[3 - s]).substitute(&half).unwrap();
        f.push(&(&raw * &RFunc::from_int(&vars, binom[s as usize])) / &RFunc::from_int(&vars, binom[s as usize + 1]));
    }
    let ints = |xs: &[i64]| xs.iter().map(|&x| RFunc::from_int(&vars, x)).collect::<Vec<_>>();
    assert_eq!(e, ints(&[3, 2, 1]));
    assert_eq!(f, ints(&[1, 2, 3]));
}

#[test]
fn coproduct_factorization() {
    for ell in [vec![1, 2], vec![3], vec![2, 1, 1]] {
        let r = coproduct_factorization_check(&profile(&ell), 2).unwrap();
        assert!(r.passed(), "{ell:?}: {:?}", r.failures());
        assert!(r.count("e").0 > 0 || ell.len() == 1);
    }
}

#[test]
fn graded_operator_blocks() {
    let p = profile(&[1, 2]);
    let m = YangianModule::new(&p).unwrap();
    let e = m.graded_operator(Generator::E, 1, 3).unwrap();
    assert_eq!(e.blocks.len(), 4);
    for (v, block) in &e.blocks {
        assert_eq!(block.cols.len(), m.basis(*v).len());
        assert_eq!(block.rows.len(), m.basis(v + 1).len());
    }
    let f = m.graded_operator(Generator::F, 0, 3).unwrap();
    assert_eq!(f.blocks[0].0, 1);
    let basis = ModuleBasis::new(&p, 3);
    assert_eq!(basis.dimension(), 6);
    assert_eq!(basis.grade(1).len(), 2);
    // Memoized blocks are shared.
    assert!(Arc::ptr_eq(&m.e_matrix(1, 0).unwrap(), &m.e_matrix(1, 0).unwrap()));
    assert_eq!(e_matrix(1, 0, &p).unwrap(), *m.e_matrix(1, 0).unwrap());
    assert_eq!(psi_eigenvalue(&fp(&[1, 1]), &p).unwrap(), m.psi_eigenvalue(&fp(&[1, 1])).unwrap());
    assert!(m.psi_eigenvalue(&fp(&[2, 0])).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn samples_avoid_pole_loci(seed in any::<u64>(), trial in 0usize..50) {
        let p = profile(&[2, 1, 3]);
        let (hbar, z) = sample_point(&p, seed, trial);
        prop_assert!(hbar != int(0));
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    for a in -12i64..=12 {
                        prop_assert!(&z[i] - &z[j] != &hbar * int(a));
                    }
                }
            }
            prop_assert!(z[i].numer().magnitude() <= &10_000u32.into());
        }
    }

    #[test]
    fn relations_hold_at_random_points(seed in any::<u64>(), a in 1u32..=2, b in 1u32..=2) {
        let p = profile(&[a, b]);
        let r = verify_yangian_relations(&p, 2, 1, Mode::Randomized { seed, trials: 1 }).unwrap();
        prop_assert!(r.passed());
    }
}
