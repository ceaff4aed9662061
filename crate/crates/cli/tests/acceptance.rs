//! Acceptance criteria 1-10. Each criterion prints one line with its verdict,
//! its runtime and the runtime limit; the target exits nonzero if any fails.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use exact_field::{parse_rfunc, Matrix, RFunc, VarTable};
use lattice_model::{
    boltzmann_weight, check_sixvertex_identities, column_transfer, enumerate_states, fbasis_table, ket_permutation,
    lemma_lm_check, partition_function, theorem_tilde_w_check, tilde_bra, tilde_ket_with, Column, GAMMA_SIGN,
};
use quiver_fixedpoints::{FixedPoint, Permutation, SpinProfile};
use rmatrix::{braid_consistency_check, r_closed_form_w2, r_matrix_w2};
use shuffle_weights::{restriction_matrix, specialize_w2, verify_weight_properties, w2_table, weight_function};
use yangian_module::{evaluation_rep_check, drinfeld_minus_shift_holds, verify_yangian_relations, Mode, Y5_SIGN};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, Option<u64>, fn() -> Outcome);

fn profiles(w: usize, max: u32) -> Vec<Vec<u32>> {
    if w == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in profiles(w - 1, max) {
        for l in 1..=max {
            let mut p = rest.clone();
            p.push(l);
            out.push(p);
        }
    }
    out
}

fn matrix_matches(m: &Matrix, table: &Arc<VarTable>, expected: &[Vec<String>], what: &str) -> Result<(), String> {
    for (i, row) in expected.iter().enumerate() {
        for (j, text) in row.iter().enumerate() {
            let want = parse_rfunc(table, text).map_err(|e| format!("{what}: {e}"))?;
            if m.get(i, j) != &want {
                return Err(format!("{what} entry ({i},{j}): {} vs {want}", m.get(i, j)));
            }
        }
    }
    Ok(())
}

fn rows(expected: &[&[&str]]) -> Vec<Vec<String>> {
    expected.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
}

fn report_ok(r: &exact_field::Report, what: &str) -> Result<(), String> {
    if r.passed() {
        Ok(())
    } else {
        Err(format!("{what}: {}", r.to_json()["failures"][0]))
    }
}

fn c1() -> Outcome {
    let p = SpinProfile::symbolic(2);
    let table = w2_table(&p);
    let r = r_matrix_w2(1, &p).map_err(|e| e.to_string())?;
    matrix_matches(
        &r.matrix,
        &table,
        &rows(&[
            &["(-z + (l_1 - l_2)*hbar)/(z - (l_1 + l_2)*hbar)", "-2*l_1*hbar/(z - (l_1 + l_2)*hbar)"],
            &["-2*l_2*hbar/(z - (l_1 + l_2)*hbar)", "(-z - (l_1 - l_2)*hbar)/(z - (l_1 + l_2)*hbar)"],
        ]),
        "R(z)",
    )?;
    let l2 = table.require("l_2").map_err(|e| e.to_string())?;
    let l1 = RFunc::var(&table, table.require("l_1").map_err(|e| e.to_string())?);
    let pure = r.matrix.try_map(|e| e.substitute(&[(l2, l1.clone())])).map_err(|e| e.to_string())?;
    matrix_matches(
        &pure,
        &table,
        &rows(&[
            &["-z/(z - 2*l_1*hbar)", "-2*l_1*hbar/(z - 2*l_1*hbar)"],
            &["-2*l_1*hbar/(z - 2*l_1*hbar)", "-z/(z - 2*l_1*hbar)"],
        ]),
        "pure spin",
    )?;
    Ok("R(z) and (-z Id - 2 l hbar P)/(z - 2 l hbar)".into())
}

fn c2() -> Outcome {
    let p = SpinProfile::symbolic(2);
    let table = w2_table(&p);
    let vars = p.var_table(2, &[]);
    let specialize = |m: &exact_field::OpMatrix| -> Result<Matrix, String> {
        let rows = (0..m.matrix.nrows())
            .map(|i| m.matrix.row(i).iter().map(|e| specialize_w2(e, &table)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        Matrix::from_rows(&table, rows).map_err(|e| e.to_string())
    };
    let id = Permutation::identity(2);
    let swap = Permutation::parse("2,1", 2).map_err(|e| e.to_string())?;
    let a = restriction_matrix(&id, 2, &p, &vars).map_err(|e| e.to_string())?;
    matrix_matches(
        &specialize(&a)?,
        &table,
        &rows(&[
            &["(z - (l_1 + l_2)*hbar)*(z - (l_1 + l_2 - 2)*hbar)", "0", "0"],
            &["-(z - (l_1 + l_2)*hbar)*2*l_2*hbar", "-(z - (l_1 - l_2 - 2)*hbar)*(z - (l_1 + l_2)*hbar)", "0"],
            &[
                "2*l_2*(2*l_2 - 2)*hbar^2",
                "2*(2*l_2 - 2)*hbar*(z - (l_1 - l_2)*hbar)",
                "(z - (l_1 - l_2)*hbar)*(z - (l_1 - l_2 + 2)*hbar)",
            ],
        ]),
        "[W^id|]",
    )?;
    let b = restriction_matrix(&swap, 2, &p, &vars).map_err(|e| e.to_string())?;
    matrix_matches(
        &specialize(&b)?,
        &table,
        &rows(&[
            &[
                "(z - (l_1 - l_2)*hbar)*(z - (l_1 - l_2 - 2)*hbar)",
                "-2*(2*l_1 - 2)*hbar*(z - (l_1 - l_2)*hbar)",
                "2*l_1*(2*l_1 - 2)*hbar^2",
            ],
            &["0", "-(z - (l_1 - l_2 + 2)*hbar)*(z + (l_1 + l_2)*hbar)", "2*l_1*hbar*(z + (l_1 + l_2)*hbar)"],
            &["0", "0", "(z + (l_1 + l_2)*hbar)*(z + (l_1 + l_2 - 2)*hbar)"],
        ]),
        "[W^(21)|]",
    )?;
    let r = r_matrix_w2(2, &p).map_err(|e| e.to_string())?;
    let den = "((z - (l_1 + l_2)*hbar)*(z - (l_1 + l_2 - 2)*hbar))";
    let e = |num: &str| format!("({num})/{den}");
    let expected = vec![
        vec![
            e("(z - (l_1 - l_2)*hbar)*(z - (l_1 - l_2 - 2)*hbar)"),
            e("-2*(2*l_1 - 2)*hbar*(z - (l_1 - l_2)*hbar)"),
            e("2*l_1*(2*l_1 - 2)*hbar^2"),
        ],
        vec![
            e("-2*l_2*hbar*(z - (l_1 - l_2)*hbar)"),
            e("z^2 - 2*z*hbar - (2*l_1 + l_1^2 + 2*l_2 - 6*l_1*l_2 + l_2^2)*hbar^2"),
            e("-2*l_1*hbar*(z + (l_1 - l_2)*hbar)"),
        ],
        vec![
            e("2*l_2*(2*l_2 - 2)*hbar^2"),
            e("-2*(2*l_2 - 2)*hbar*(z + (l_1 - l_2)*hbar)"),
            e("(z + (l_1 - l_2)*hbar)*(z + (l_1 - l_2 + 2)*hbar)"),
        ],
    ];
    matrix_matches(&r.matrix, &table, &expected, "R(z)")?;
    let poles = parse_rfunc(&table, den).map_err(|e| e.to_string())?;
    if let Some(x) = r.matrix.entries().iter().find(|x| !(*x * &poles).is_polynomial()) {
        return Err(format!("pole outside z = (l_1+l_2)hbar, (l_1+l_2-2)hbar: {x}"));
    }
    Ok("[W^id|], [W^(21)|], R(z) with poles only at (l_1+l_2)hbar and (l_1+l_2-2)hbar".into())
}

fn c3() -> Outcome {
    let mut n = 0;
    for l1 in 3..=4 {
        for l2 in 3..=4 {
            let p = SpinProfile::new(&[l1, l2]).map_err(|e| e.to_string())?;
            let table = w2_table(&p);
            for v in 1..=3u32 {
                let r = r_matrix_w2(v, &p).map_err(|e| e.to_string())?;
                for j in 0..=v {
                    for jp in 0..=v {
                        let c = r_closed_form_w2(j, jp, v, &p, &table).map_err(|e| e.to_string())?;
                        if &c != r.matrix.get(j as usize, jp as usize) {
                            return Err(format!("l=({l1},{l2}) v={v} ({j},{jp}): {c}"));
                        }
                        n += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{n} entries"))
}

fn c4() -> Outcome {
    let mut n = 0;
    for w in 1..=3 {
        for ell in profiles(w, 3) {
            let p = SpinProfile::new(&ell).map_err(|e| e.to_string())?;
            for v in 0..=3 {
                let r = theorem_tilde_w_check(&p, v).map_err(|e| e.to_string())?;
                report_ok(&r, &format!("l={ell:?} v={v}"))?;
                n += r.count("tildeW").0;
            }
        }
    }
    let p = SpinProfile::symbolic(2);
    let vars = p.var_table(2, &[]);
    let b = FixedPoint(vec![1, 1]);
    let z = partition_function(&p, 2, &b, &vars).map_err(|e| e.to_string())?;
    let w = weight_function(&Permutation::identity(2), &b, &p, &vars).map_err(|e| e.to_string())?.value;
    let four = exact_field::parse_mpoly(&vars, "4*l_1*l_2*hbar^2").map_err(|e| e.to_string())?;
    let states = enumerate_states(&p, 2, &b).map_err(|e| e.to_string())?;
    let first = boltzmann_weight(&states[0], &p, &vars).map_err(|e| e.to_string())?;
    let expected_first = exact_field::parse_mpoly(&vars, "4*l_1*l_2*hbar^2*(y_1 - z_2 - (l_2 - 2)*hbar)*(y_2 - z_1 + l_1*hbar)")
        .map_err(|e| e.to_string())?;
    if z != &four * &w || states.len() != 2 || first != expected_first {
        return Err("the (1,1) example differs".into());
    }
    Ok(format!("{n} boundaries, (1,1) example = 4 l_1 l_2 hbar^2 W^id"))
}

fn c5() -> Outcome {
    let mut n = 0;
    for w in 1..=2 {
        for ell in profiles(w, 3) {
            let p = SpinProfile::new(&ell).map_err(|e| e.to_string())?;
            let r = verify_yangian_relations(&p, 3, 2, Mode::Symbolic).map_err(|e| e.to_string())?;
            if let Some(bad) = r.failures().next() {
                return Err(format!("l={ell:?}: {}", bad.to_json()));
            }
            n += r.checks.len();
        }
    }
    let mut m = 0;
    for ell in profiles(3, 3) {
        let p = SpinProfile::new(&ell).map_err(|e| e.to_string())?;
        let r = verify_yangian_relations(&p, 3, 2, Mode::Randomized { seed: 2024, trials: 20 }).map_err(|e| e.to_string())?;
        if let Some(bad) = r.failures().next() {
            return Err(format!("l={ell:?}: {}", bad.to_json()));
        }
        m += r.checks.len();
    }
    Ok(format!("{n} symbolic and {m} randomized checks; Y5 holds with [e_r,f_s] = {Y5_SIGN}*2hbar psi_(r+s)"))
}

fn c6() -> Outcome {
    for ell in 1..=4 {
        let r = evaluation_rep_check(ell).map_err(|e| e.to_string())?;
        report_ok(&r, &format!("l={ell}"))?;
        for check in ["ladder_e0", "ladder_f0", "e_k_evaluation", "drinfeld_highest", "drinfeld_lowest"] {
            if r.count(check).0 == 0 {
                return Err(format!("l={ell}: {check} did not run"));
            }
        }
        if drinfeld_minus_shift_holds(ell).map_err(|e| e.to_string())? {
            return Err(format!("l={ell}: Drinfeld identity with P(z-2hbar) unexpectedly holds"));
        }
    }
    Ok("ladders, e_k formula; Drinfeld identity holds with the shift psi|b_l P(z) = P(z+2hbar)".into())
}

fn c7() -> Outcome {
    let mut n = 0;
    for w in 1..=3 {
        for ell in profiles(w, 3) {
            let p = SpinProfile::new(&ell).map_err(|e| e.to_string())?;
            for v in 0..=3 {
                let r = verify_weight_properties(&p, v).map_err(|e| e.to_string())?;
                report_ok(&r, &format!("l={ell:?} v={v}"))?;
                n += r.total_checks();
            }
        }
    }
    Ok(format!("{n} checks; diagonal product with its sign"))
}

fn c8() -> Outcome {
    let r = check_sixvertex_identities().map_err(|e| e.to_string())?;
    report_ok(&r, "six-vertex")?;
    let mut n = r.total_checks();
    for v in 1..=4 {
        for l in 1..=3 {
            for m in 0..=l {
                let r = lemma_lm_check(Some(l), m, v).map_err(|e| e.to_string())?;
                report_ok(&r, &format!("v={v} l={l} m={m}"))?;
                n += r.total_checks();
            }
        }
    }
    let vars = fbasis_table(4);
    let var = |name: &str| exact_field::MPoly::var_named(&vars, name).unwrap();
    let (h, x, l) = (var("hbar"), var("x"), var("l"));
    let ys: Vec<_> = (1..=4).map(|i| var(&format!("y_{i}"))).collect();
    let t = column_transfer(&Column { l, bound: None, x }, 2, 0, &ys, &h).map_err(|e| e.to_string())?;
    let b = [1, 1, 0, 1];
    let bra = tilde_bra(&b, &ys, &h).map_err(|e| e.to_string())?;
    let pair = |a: &[u32]| -> Result<RFunc, String> {
        let ket = tilde_ket_with(a, &ket_permutation(a), &ys, &h).map_err(|e| e.to_string())?;
        Ok(bra.pair(&ket.apply(&t)))
    };
    if !pair(&[0, 0, 1, 0])?.is_zero() {
        return Err("worked zero entry is nonzero".into());
    }
    let want = parse_rfunc(
        &vars,
        "4*hbar^2*l*(l - 1)*(y_1 - y_3 - 2*hbar)*(y_4 - y_3 - 2*hbar)/((y_1 - y_3)*(y_4 - y_3))\
         *(y_2 - x + l*hbar)*(y_3 - x - l*hbar)",
    )
    .map_err(|e| e.to_string())?;
    let got = pair(&[0, 1, 0, 0])?;
    if got != want {
        return Err(format!("worked nonzero entry: {got}"));
    }
    Ok(format!("{n} checks and both worked entries, with gamma(u) = {GAMMA_SIGN}*2hbar/(u - 2hbar)"))
}

fn c9() -> Outcome {
    for ell in [[1, 1, 1], [2, 1, 1]] {
        let p = SpinProfile::new(&ell).map_err(|e| e.to_string())?;
        for v in 0..=1 {
            let r = braid_consistency_check(v, &p).map_err(|e| e.to_string())?;
            report_ok(&r, &format!("l={ell:?} v={v}"))?;
        }
    }
    Ok("both factorizations of R_(id,321)".into())
}

fn c10() -> Outcome {
    let run = |threads: &str| -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_spinlab"))
            .args(["--threads", threads, "verify", "all", "--ell", "2,3", "--vmax", "2"])
            .env_remove("SPINLAB_GOLDEN_DIR")
            .output()
            .map_err(|e| e.to_string())?;
        if out.status.code() != Some(0) {
            return Err(format!("{threads} threads: exit {:?}", out.status.code()));
        }
        Ok(out.stdout)
    };
    let one = run("1")?;
    for t in ["2", "8"] {
        if run(t)? != one {
            return Err(format!("output with {t} threads differs from 1 thread"));
        }
    }
    Ok(format!("`verify all --ell 2,3 --vmax 2`, {} bytes, identical for 1, 2, 8 threads", one.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "w=2 v=1 R-matrix", Some(1), c1),
        (2, "w=2 v=2 restriction and R-matrices", Some(5), c2),
        (3, "closed-form R vs inversion", Some(60), c3),
        (4, "lattice theorem", Some(120), c4),
        (5, "Yangian relations", Some(300), c5),
        (6, "w=1 evaluation module", Some(10), c6),
        (7, "triangularity and degrees", Some(60), c7),
        (8, "six-vertex suite and F-basis", Some(120), c8),
        (9, "braid consistency", Some(60), c9),
        (10, "determinism across threads", None, c10),
    ];
    let mut failed = Vec::new();
    for (n, name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed <= Duration::from_secs(l));
        let (ok, detail) = match outcome {
            Ok(d) if in_time => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(e) => (false, e),
        };
        println!(
            "criterion {n:>2} {}: {name} [{:.2}s / {}] {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.map_or("no limit".to_string(), |l| format!("{l}s"))
        );
        if !ok {
            failed.push(n);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
