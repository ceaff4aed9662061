//! The `w = 1` module as an evaluation representation.

use serde_json::json;

use exact_field::{binomial, int, ratio, MPoly, RFunc, Report};
use quiver_fixedpoints::{FixedPoint, SpinProfile};

use crate::module::YangianModule;
use crate::{Result, YangianError};

/// Largest generator index tested by the evaluation checks.
const K_MAX: u32 = 3;

fn b(v: u32) -> FixedPoint {
    FixedPoint(vec![v])
}

/// Drinfeld polynomial `P(u) = prod_{s<l} (u - z_1 + (l - 2s) hbar)`.
pub fn drinfeld_polynomial(module: &YangianModule) -> Result<MPoly> {
    let vars = module.vars();
    let ell = module
        .profile()
        .values()
        .and_then(|v| v.first().copied())
        .ok_or_else(|| YangianError::Domain("Drinfeld polynomial needs a concrete spin".into()))?;
    let u = MPoly::var(vars, module.u());
    let mut p = MPoly::one(vars);
    for s in 0..ell {
        let shift = module.hbar().scale(&int(ell as i64 - 2 * s as i64));
        p = &p * &(&(&u - module.z(0)) + &shift);
    }
    Ok(p)
}

fn shift_u(module: &YangianModule, p: &MPoly, by: i64) -> MPoly {
    let u = MPoly::var(module.vars(), module.u());
    p.substitute(&[(module.u(), &u + &module.hbar().scale(&int(by)))])
}

/// Checks the `w = 1` module against the ladder formulas of the evaluation
/// representation and the Drinfeld polynomial.
pub fn evaluation_rep_check(ell: u32) -> Result<Report> {
    let profile = SpinProfile::new(&[ell]).map_err(YangianError::from)?;
    let module = YangianModule::new(&profile)?;
    let vars = module.vars().clone();
    let hbar = module.hbar().clone();
    let z = module.z(0).clone();
    let mut report = Report::new("evaluation");
    let rf = RFunc::from_poly;

    // e_k(b_v) = (z - l hbar + 2v hbar)^k 2(v - l) hbar b_{v+1}
    // f_k(b_{v+1}) = (z - l hbar + 2v hbar)^k (v + 1) b_v
    for v in 0..ell {
        let x = &z - &hbar.scale(&int(ell as i64 - 2 * v as i64));
        for k in 0..=K_MAX {
            let got = module.e_matrix(k, v)?.entry(&[v + 1], &[v]);
            let want = rf(&x.pow(k) * &hbar.scale(&int(2 * (v as i64 - ell as i64))));
            report.record("e_formula", got == want, || json!({ "v": v, "k": k }), || format!("{got} vs {want}"));
            let got = module.f_matrix(k, v)?.entry(&[v], &[v + 1]);
            let want = rf(x.pow(k).scale(&int(v as i64 + 1)));
            report.record("f_formula", got == want, || json!({ "v": v, "k": k }), || format!("{got} vs {want}"));
        }
    }
    for k in 0..=K_MAX {
        let top = module.e_matrix(k, ell)?;
        let ok = top.rows.is_empty() && module.e_entry(k, &b(ell), 0)?.is_zero();
        report.record("e_kills_top", ok, || json!({ "k": k }), || "nonzero action on b_l".into());
    }

    // hbar = -1/2 and v_s = C(l, s) b_{l-s}.
    let half = [(vars.require("hbar")?, RFunc::constant(&vars, ratio(-1, 2)))];
    let at_half = |r: RFunc| -> Result<RFunc> { Ok(r.substitute(&half)?) };
    let c = |s: u32| RFunc::constant(&vars, binomial(ell as u64, s as u64));
    for s in 1..=ell {
        for k in 0..=K_MAX {
            let raw = at_half(module.e_matrix(k, ell - s)?.entry(&[ell - s + 1], &[ell - s]))?;
            let coeff = &(&raw * &c(s)) / &c(s - 1);
            let base = &rf(z.clone()) + &RFunc::constant(&vars, ratio(2 * s as i64 - ell as i64, 2));
            let want = &base.pow(k) * &RFunc::from_int(&vars, (ell - s + 1) as i64);
            let check = if k == 0 { "ladder_e0" } else { "e_k_evaluation" };
            report.record(check, coeff == want, || json!({ "s": s, "k": k }), || format!("{coeff} vs {want}"));
        }
    }
    for s in 0..ell {
        let raw = at_half(module.f_matrix(0, ell - s - 1)?.entry(&[ell - s - 1], &[ell - s]))?;
        let coeff = &(&raw * &c(s)) / &c(s + 1);
        let want = RFunc::from_int(&vars, (s + 1) as i64);
        report.record("ladder_f0", coeff == want, || json!({ "s": s }), || format!("{coeff} vs {want}"));
    }

    // Drinfeld polynomial: psi(u) on the highest and lowest vectors.
    let p = drinfeld_polynomial(&module)?;
    let psi_top = module.psi_eigenvalue(&b(ell))?;
    let psi_bottom = module.psi_eigenvalue(&b(0))?;
    let top_times_p = &psi_top * &rf(p.clone());
    let bottom_times_p = &psi_bottom * &rf(p.clone());
    let plus = rf(shift_u(&module, &p, 2));
    let minus = rf(shift_u(&module, &p, -2));
    report.record("drinfeld_highest", top_times_p == plus, || json!({ "vector": "b_l" }), || {
        format!("psi(u)|b_l P(u) = {top_times_p}, P(u+2hbar) = {plus}")
    });
    report.record("drinfeld_lowest", bottom_times_p == minus, || json!({ "vector": "b_0" }), || {
        format!("psi(u)|b_0 P(u) = {bottom_times_p}, P(u-2hbar) = {minus}")
    });
    let minus_shift = top_times_p == minus;
    report.note(format!(
        "psi(u)|b_l P(u) = P(u-2hbar) {}",
        if minus_shift { "holds" } else { "does not hold; it holds on b_0, and on b_l with P(u+2hbar)" }
    ));
    Ok(report)
}

/// Whether the identity `psi(u)|b_l P(u) = P(u - 2hbar)` holds.
pub fn drinfeld_minus_shift_holds(ell: u32) -> Result<bool> {
    let profile = SpinProfile::new(&[ell]).map_err(YangianError::from)?;
    let module = YangianModule::new(&profile)?;
    let p = drinfeld_polynomial(&module)?;
    let lhs = &module.psi_eigenvalue(&b(ell))? * &RFunc::from_poly(p.clone());
    Ok(lhs == RFunc::from_poly(shift_u(&module, &p, -2)))
}
