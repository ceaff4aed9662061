//! Factorization of the global operators through the per-column `w = 1`
//! modules, with the prefactors of the fusion tensor product.

use serde_json::json;

use exact_field::{int, MPoly, RFunc, Report};
use quiver_fixedpoints::{FixedPoint, SpinProfile};

use crate::module::YangianModule;
use crate::Result;

/// Largest generator index tested.
const R_MAX: u32 = 2;

fn ratio_of(vars: &std::sync::Arc<exact_field::VarTable>, num: &[MPoly], den: &[MPoly]) -> Result<RFunc> {
    Ok(RFunc::from_factors(vars, int(1), num, den)?)
}

/// Compares `e_r`, `f_r` and `psi(u)` entries against the tensor formulas
/// built from the column modules, for grades up to `v_max`.
pub fn coproduct_factorization_check(profile: &SpinProfile, v_max: u32) -> Result<Report> {
    let global = YangianModule::new(profile)?;
    let vars = global.vars().clone();
    let w = profile.w();
    let columns: Vec<YangianModule> = (0..w).map(|j| global.column_module(j)).collect::<Result<_>>()?;
    let two = global.hbar().scale(&int(2));
    let lh: Vec<MPoly> = (0..w).map(|i| global.ell(i) * global.hbar()).collect();
    let mut report = Report::new("coproduct");

    for v in 0..=v_max {
        for lambda in global.basis(v) {
            let local = |j: usize| FixedPoint(vec![lambda.0[j]]);
            let ctx = |j: Option<usize>| json!({ "lambda": lambda.0, "column": j.map(|j| j + 1) });

            let mut product = RFunc::one(&vars);
            for (j, col) in columns.iter().enumerate() {
                product = &product * &col.psi_eigenvalue(&local(j))?;
            }
            let got = global.psi_eigenvalue(&lambda)?;
            report.record("psi", got == product, || ctx(None), || format!("{got} vs {product}"));

            for (j, column) in columns.iter().enumerate() {
                if !profile.can_raise(j, lambda.0[j]) {
                    continue;
                }
                let x = global.box_weight(j, lambda.0[j]);
                let others: Vec<MPoly> = (0..w)
                    .filter(|&i| i != j)
                    .flat_map(|i| (0..lambda.0[i]).map(move |k| (i, k)))
                    .map(|(i, k)| global.box_weight(i, k))
                    .collect();
                let mut e_num = Vec::new();
                let mut e_den = Vec::new();
                let mut f_num = Vec::new();
                let mut f_den = Vec::new();
                for y in &others {
                    let d = &x - y;
                    e_num.push(d.clone());
                    e_den.push(&d - &two);
                    f_num.push(&d + &two);
                    f_den.push(d);
                }
                for i in (0..w).filter(|&i| i != j) {
                    let d = &x - global.z(i);
                    e_num.push(&d - &lh[i]);
                    e_den.push(&d + &lh[i]);
                }
                let e_pref = ratio_of(&vars, &e_num, &e_den)?;
                let f_pref = ratio_of(&vars, &f_num, &f_den)?;
                for r in 0..=R_MAX {
                    let got = global.e_entry(r, &lambda, j)?;
                    let want = &e_pref * &column.e_entry(r, &local(j), 0)?;
                    report.record("e", got == want, || ctx(Some(j)), || format!("r={r}: {got} vs {want}"));
                    let got = global.f_entry(r, &lambda, j)?;
                    let want = &f_pref * &column.f_entry(r, &local(j), 0)?;
                    report.record("f", got == want, || ctx(Some(j)), || format!("r={r}: {got} vs {want}"));
                }
            }
        }
    }
    Ok(report)
}
