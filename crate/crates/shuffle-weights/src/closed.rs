use std::sync::Arc;

use exact_field::{binomial, int, MPoly, RFunc, VarTable};
use quiver_fixedpoints::{FixedPoint, Spin, SpinProfile};

use crate::{Result, WeightError};

/// Variable table `hbar < l_1 < l_2 < z` used after setting `z := z_1 - z_2`.
pub fn w2_table(profile: &SpinProfile) -> Arc<VarTable> {
    let mut names = vec!["hbar".to_string()];
    if profile.is_symbolic() {
        names.push("l_1".into());
        names.push("l_2".into());
    }
    names.push("z".into());
    VarTable::from_names(&names).expect("distinct names")
}

/// Moves a polynomial into `target`, renaming variables per `renames`.
pub fn rename_into(p: &MPoly, target: &Arc<VarTable>, renames: &[(&str, &str)]) -> Result<MPoly> {
    let src = p.vars();
    let mut map = Vec::with_capacity(src.len());
    for (i, name) in src.names().iter().enumerate() {
        let new = renames.iter().find(|(from, _)| from == name).map(|(_, to)| *to).unwrap_or(name);
        match target.index(new) {
            Some(j) => map.push(Some(j)),
            None if p.uses_var(i) => {
                return Err(WeightError::Dimension(format!("variable `{name}` has no image in {target}")))
            }
            None => map.push(None),
        }
    }
    let terms = p.terms().iter().map(|(m, c)| {
        let mut e = vec![0; target.len()];
        for (i, k) in m.0.iter().enumerate() {
            if let Some(j) = map[i] {
                e[j] += k;
            }
        }
        (e, c.clone())
    });
    Ok(MPoly::from_terms(target, terms))
}

/// Specializes `z_2 -> 0`, `z_1 -> z` into `target`.
pub fn specialize_w2(r: &RFunc, target: &Arc<VarTable>) -> Result<RFunc> {
    let vars = r.vars().clone();
    let zero = RFunc::zero(&vars);
    let r = r.substitute_named(&[("z_2", zero)])?;
    let num = rename_into(r.num(), target, &[("z_1", "z")])?;
    let den = rename_into(r.den(), target, &[("z_1", "z")])?;
    Ok(RFunc::new(num, den)?)
}

/// `(l - lo)(l - lo - 1)..(l - hi + 1)`, i.e. `(l - lo)!/(l - hi)!` for `lo <= hi`.
pub fn falling_factorial(ell: &MPoly, lo: u32, hi: u32) -> MPoly {
    let vars = ell.vars();
    let mut acc = MPoly::one(vars);
    for k in lo..hi {
        acc = &acc * &(ell - &MPoly::from_int(vars, k as i64));
    }
    acc
}

/// Closed form of `W^id_{(v1,v2)}|_{(mu1,mu2)}` for two framing vertices in
/// the variable `z = z_1 - z_2`.
pub fn closed_form_restriction_w2(
    lambda: &FixedPoint,
    mu: &FixedPoint,
    profile: &SpinProfile,
    table: &Arc<VarTable>,
) -> Result<RFunc> {
    if profile.w() != 2 || lambda.w() != 2 || mu.w() != 2 {
        return Err(WeightError::Domain("closed form requires w = 2".into()));
    }
    let (v1, v2) = (lambda.0[0], lambda.0[1]);
    let (m1, m2) = (mu.0[0], mu.0[1]);
    let v = v1 + v2;
    if m1 + m2 != v {
        return Err(WeightError::Domain(format!("{lambda} and {mu} have different totals")));
    }
    for s in profile.spins() {
        if let Spin::Value(l) = s {
            if *l < v {
                return Err(WeightError::Domain(format!("closed form requires spins >= v = {v}")));
            }
        }
    }
    if v1 < m1 || v2 > m2 {
        return Ok(RFunc::zero(table));
    }
    let hbar = MPoly::var_named(table, "hbar")?;
    let z = MPoly::var_named(table, "z")?;
    let l1 = profile.ell_poly(0, table)?;
    let l2 = profile.ell_poly(1, table)?;
    let c = |n: i64| MPoly::from_int(table, n);
    let sign = if (v1 * v2 + m1 + v2) % 2 == 0 { 1 } else { -1 };
    let mut acc = MPoly::constant(table, binomial(m2 as u64, v2 as u64) * int(sign));
    acc = &acc * &falling_factorial(&l2, v2, m2);
    acc = &acc * &(&hbar * &c(2)).pow(m2 - v2);
    let l_diff = &l2 - &l1;
    let l_sum = &l1 + &l2;
    for b in 0..v2 {
        let shift = &l_diff + &c(2 * (m1 as i64 - b as i64));
        acc = &acc * &(&z + &(&shift * &hbar));
    }
    for a in 0..m1 {
        let shift = &l_sum - &c(2 * a as i64);
        acc = &acc * &(&z - &(&shift * &hbar));
    }
    Ok(RFunc::from_poly(acc))
}
