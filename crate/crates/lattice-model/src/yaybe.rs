//! The crossing of two thick lines. Yang-Baxter with one thin line is a
//! linear system for the crossing; it is solved at a rational point and the
//! solution is compared with `P D R D^-1` for the R-matrices of two framing
//! vertices and two sign conventions in `D`. The comparison is reported, not
//! asserted.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::json;

use exact_field::{int, ratio, ExactScalar, MPoly, Report, VarTable};
use quiver_fixedpoints::{Permutation, SpinProfile};
use rmatrix::r_matrix;

use crate::state::VertexConfig;
use crate::Result;

/// Labels of a crossing entry: outputs `(k1, k2)` on the left and right
/// after the crossing, inputs `(m1, m2)` on the left and right before it.
type Slot = (u32, u32, u32, u32);

fn point() -> (ExactScalar, ExactScalar, ExactScalar, Vec<ExactScalar>) {
    (ratio(3, 7), ratio(5, 11), ratio(-2, 13), vec![ratio(1, 2), ratio(7, 5), ratio(-3, 4)])
}

fn falling(l: u32, v: u32) -> i64 {
    (0..v).map(|k| (l - k) as i64).product()
}

/// Null space of `rows` (each a sparse row over the unknowns) by reduction
/// to row echelon form.
fn null_space(mut rows: Vec<Vec<ExactScalar>>, n: usize) -> Vec<Vec<ExactScalar>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = ExactScalar::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![ExactScalar::zero(); n];
            v[f] = ExactScalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -rows[i][f].clone();
            }
            v
        })
        .collect()
}

/// Solves Yang-Baxter with one thin line for the crossing of thick lines of
/// spins `la` (entering on the left) and `lb`, then compares the solution
/// with the D-conjugated R-matrices.
pub fn yaybe_check(la: u32, lb: u32) -> Result<Report> {
    let mut report = Report::new("yaybe");
    let vars = VarTable::from_names(&["hbar", "x", "y"])?;
    let (hbar_v, z1, z2, ys) = point();
    let hbar = MPoly::var(&vars, 0);
    let weight = |l: u32, cfg: VertexConfig, z: &ExactScalar, y: &ExactScalar| -> ExactScalar {
        if !cfg.is_valid(Some(l)) {
            return ExactScalar::zero();
        }
        let u = &MPoly::var(&vars, 2) - &MPoly::var(&vars, 1);
        cfg.weight(&MPoly::from_int(&vars, l as i64), &u, &hbar).eval(&[hbar_v.clone(), z.clone(), y.clone()])
    };

    let mut slots: BTreeMap<Slot, usize> = BTreeMap::new();
    for m1 in 0..=la {
        for m2 in 0..=lb {
            for k1 in 0..=lb {
                for k2 in 0..=la {
                    if k1 + k2 == m1 + m2 {
                        let n = slots.len();
                        slots.insert((k1, k2, m1, m2), n);
                    }
                }
            }
        }
    }
    let n = slots.len();
    let mut rows = Vec::new();
    let cfg = |left, right, bottom, top| VertexConfig { left, right, bottom, top };
    for y in &ys {
        for (m1, m2, n1, n2) in (0..=la).flat_map(|m1| {
            (0..=lb).flat_map(move |m2| (0..=lb).flat_map(move |n1| (0..=la).map(move |n2| (m1, m2, n1, n2))))
        }) {
            for a in 0..=1 {
                for b in 0..=1 {
                    let mut row = vec![ExactScalar::zero(); n];
                    for c in 0..=1 {
                        // Crossing first: the line from the right now sits on the left.
                        for (&(k1, k2, p1, p2), &idx) in &slots {
                            if (p1, p2) == (m1, m2) {
                                let w = weight(la, cfg(c, a, n2, k2), &z1, y) * weight(lb, cfg(b, c, n1, k1), &z2, y);
                                row[idx] = &row[idx] + &w;
                            }
                            if (k1, k2) == (n1, n2) {
                                let w = weight(lb, cfg(c, a, p2, m2), &z2, y) * weight(la, cfg(b, c, p1, m1), &z1, y);
                                row[idx] = &row[idx] - &w;
                            }
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let kernel = null_space(rows, n);
    let ctx = || json!({ "spins": [la, lb] });
    report.record("solvable", kernel.len() == 1, ctx, || format!("solution space of dimension {}", kernel.len()));
    let Some(solution) = kernel.first() else {
        return Ok(report);
    };
    let norm = solution[slots[&(0, 0, 0, 0)]].clone();
    if norm.is_zero() {
        report.note("the crossing vanishes on the empty state");
        return Ok(report);
    }

    let profile = SpinProfile::new(&[la, lb])?;
    let id = Permutation::identity(2);
    let swap = Permutation::parse("2,1", 2)?;
    for (name, sp, s) in [("R_{id,(21)}", &id, &swap), ("R_{(21),id}", &swap, &id)] {
        let mut grades = Vec::new();
        for g in 0..=la + lb {
            let table = profile.var_table(g as usize, &[]);
            let r = r_matrix(sp, s, g, &profile, &table)?.matrix;
            let mut at = vec![None; table.len()];
            at[table.require("hbar")?] = Some(hbar_v.clone());
            at[table.require("z_1")?] = Some(z1.clone());
            at[table.require("z_2")?] = Some(z2.clone());
            grades.push((r, at));
        }
        for (sign_name, sign) in [("(-1)^{v_j v_{j+1}}", 0), ("(-1)^{v_j + v_{j+1} + v_j v_{j+1}}", 1)] {
            let d = |va: u32, vb: u32| {
                let e = if sign == 0 { va * vb } else { va + vb + va * vb };
                int((if e % 2 == 1 { -1 } else { 1 }) * falling(la, va) * falling(lb, vb))
            };
            let mut candidate = vec![ExactScalar::zero(); n];
            for (&(k1, k2, m1, m2), &idx) in &slots {
                let (r, at) = &grades[(m1 + m2) as usize];
                let point: Vec<ExactScalar> = at.iter().map(|x| x.clone().unwrap_or_else(ExactScalar::zero)).collect();
                let e = r.entry(&[k2, k1], &[m1, m2]).eval(&point)?;
                candidate[idx] = e * d(k2, k1) / d(m1, m2);
            }
            let c_norm = candidate[slots[&(0, 0, 0, 0)]].clone();
            let matches = !c_norm.is_zero()
                && solution.iter().zip(&candidate).all(|(x, y)| x / &norm == y / &c_norm);
            report.note(format!(
                "spins ({la}, {lb}): P D R D^-1 with {name} and sign {sign_name} {} the crossing",
                if matches { "reproduces" } else { "does not reproduce" }
            ));
        }
    }
    Ok(report)
}
