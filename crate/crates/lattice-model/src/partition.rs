//! Boltzmann weights, partition functions and their comparison with the
//! identity-chamber weight functions.

use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use exact_field::{int, MPoly, Report, VarTable};
use quiver_fixedpoints::{enumerate_fixed_points, FixedPoint, Permutation, SpinProfile};
use shuffle_weights::weight_function;

use crate::state::{enumerate_states, LatticeState};
use crate::transfer::{column_transfer, Column, TensorCovector, TensorVector};
use crate::{LatticeError, Result};

fn named(vars: &Arc<VarTable>, name: &str) -> Result<MPoly> {
    MPoly::var_named(vars, name).map_err(|_| LatticeError::Domain(format!("variable `{name}` is missing from {vars}")))
}

fn ys(vars: &Arc<VarTable>, v: usize) -> Result<Vec<MPoly>> {
    (1..=v).map(|i| named(vars, &format!("y_{i}"))).collect()
}

/// `F(c) = prod_{i,j} f^(l_j)(c(i, j), y_i - z_j)`.
pub fn boltzmann_weight(state: &LatticeState, profile: &SpinProfile, vars: &Arc<VarTable>) -> Result<MPoly> {
    state.validate(profile)?;
    let hbar = named(vars, "hbar")?;
    let ys = ys(vars, state.v())?;
    let mut weight = MPoly::one(vars);
    for (i, row) in state.vertices().iter().enumerate() {
        for (j, cfg) in row.iter().enumerate() {
            let u = &ys[i] - &named(vars, &format!("z_{}", j + 1))?;
            weight = &weight * &cfg.weight(&profile.ell_poly(j, vars)?, &u, &hbar);
        }
    }
    Ok(weight)
}

/// Sum of the Boltzmann weights of all states with the given boundary.
pub fn partition_function(profile: &SpinProfile, v: u32, boundary: &FixedPoint, vars: &Arc<VarTable>) -> Result<MPoly> {
    let mut acc = MPoly::zero(vars);
    for state in enumerate_states(profile, v, boundary)? {
        acc = &acc + &boltzmann_weight(&state, profile, vars)?;
    }
    Ok(acc)
}

/// `<1..1| T^(l_1)_{v_1,0}(z_1) .. T^(l_w)_{v_w,0}(z_w) |0..0>`.
pub fn transfer_partition_function(profile: &SpinProfile, boundary: &FixedPoint, vars: &Arc<VarTable>) -> Result<MPoly> {
    if boundary.w() != profile.w() || !profile.contains(boundary) {
        return Err(LatticeError::Boundary(format!("{boundary} is not a fixed point of {profile}")));
    }
    let v = boundary.total() as usize;
    let hbar = named(vars, "hbar")?;
    let ys = ys(vars, v)?;
    let mut bra = TensorCovector::basis(vars, &vec![1; v])?;
    for j in 0..profile.w() {
        let col = Column {
            l: profile.ell_poly(j, vars)?,
            bound: profile.values().map(|ls| ls[j]),
            x: named(vars, &format!("z_{}", j + 1))?,
        };
        bra = bra.apply(&column_transfer(&col, boundary.0[j], 0, &ys, &hbar)?);
    }
    let value = bra.pair(&TensorVector::basis(vars, &vec![0; v])?);
    value
        .as_poly()
        .cloned()
        .ok_or_else(|| LatticeError::Domain(format!("transfer product is not polynomial: {value}")))
}

/// `prod_j (-1)^{v_j (v + w - j - sum_{s<=j} v_s)} (2hbar)^{v_j} l_j!/(l_j - v_j)!`.
pub fn theorem_prefactor(profile: &SpinProfile, boundary: &FixedPoint, vars: &Arc<VarTable>) -> Result<MPoly> {
    let (v, w) = (boundary.total() as i64, profile.w() as i64);
    let two_hbar = named(vars, "hbar")?.scale(&int(2));
    let mut acc = MPoly::one(vars);
    let mut partial = 0i64;
    for (j, &vj) in boundary.0.iter().enumerate() {
        partial += vj as i64;
        let exponent = vj as i64 * (v + w - (j as i64 + 1) - partial);
        if exponent % 2 != 0 {
            acc = -acc;
        }
        let ell = profile.ell_poly(j, vars)?;
        for k in 0..vj {
            acc = &(&acc * &two_hbar) * &(&ell - &MPoly::from_int(vars, k as i64));
        }
    }
    Ok(acc)
}

/// Whether `p` is unchanged by swapping `y_i` and `y_{i+1}` for every `i`.
fn symmetric_in_y(p: &MPoly, v: usize) -> Result<bool> {
    let vars = p.vars();
    for i in 1..v {
        let a = vars.require(&format!("y_{i}"))?;
        let b = vars.require(&format!("y_{}", i + 1))?;
        let mut perm: Vec<usize> = (0..vars.len()).collect();
        perm.swap(a, b);
        if p.permute_vars(&perm) != *p {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For every boundary at grade `v`: the partition function equals the
/// prefactor times `W^id`, agrees with the transfer-operator product and is
/// symmetric in the `y`s.
pub fn theorem_tilde_w_check(profile: &SpinProfile, v: u32) -> Result<Report> {
    let vars = profile.var_table(v as usize, &[]);
    let id = Permutation::identity(profile.w());
    let reports: Vec<Report> = enumerate_fixed_points(profile, v)
        .par_iter()
        .map(|boundary| -> Result<Report> {
            let mut report = Report::new("lattice");
            let ctx = || json!({ "profile": profile.to_json(), "boundary": boundary.0 });
            let tilde = partition_function(profile, v, boundary, &vars)?;
            let w_id = weight_function(&id, boundary, profile, &vars)?.value;
            let want = &theorem_prefactor(profile, boundary, &vars)? * &w_id;
            report.record("tildeW", tilde == want, ctx, || format!("{tilde} vs {want}"));
            let transfer = transfer_partition_function(profile, boundary, &vars)?;
            report.record("transfer", transfer == tilde, ctx, || format!("{transfer} vs {tilde}"));
            report.record("symmetric", symmetric_in_y(&tilde, v as usize)?, ctx, || format!("{tilde}"));
            Ok(report)
        })
        .collect::<Result<_>>()?;
    let mut report = Report::new("lattice");
    for r in reports {
        report.merge(r);
    }
    Ok(report)
}
