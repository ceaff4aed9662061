//! Residues at simple poles and expansions at infinity in a distinguished variable.

use crate::error::{FieldError, Result};
use crate::poly::MPoly;
use crate::rfunc::RFunc;

fn check_free(pole: &RFunc, u: usize) -> Result<()> {
    if pole.uses_var(u) {
        return Err(FieldError::ContextMismatch(format!(
            "pole location depends on `{}`",
            pole.vars().name(u)
        )));
    }
    Ok(())
}

/// Residue of `f` at `u = pole`, which must be a simple pole.
///
/// Writes the denominator as `(u - pole) * q` by exact division, checks
/// `q(pole) != 0` and returns `num(pole) / q(pole)`.
pub fn residue_simple_pole(f: &RFunc, u: usize, pole: &RFunc) -> Result<RFunc> {
    check_free(pole, u)?;
    let vars = f.vars().clone();
    let point = || pole.to_string();
    // u - p/q  ~  q*u - p
    let linear = &(pole.den() * &MPoly::var(&vars, u)) - pole.num();
    let q = f.den().div_exact(&linear).ok_or_else(|| FieldError::PoleOrder {
        point: point(),
        detail: "no pole at this point".into(),
    })?;
    let binding = [(u, pole.clone())];
    let q_at = RFunc::from_poly(q).substitute(&binding)?;
    if q_at.is_zero() {
        return Err(FieldError::PoleOrder { point: point(), detail: "pole of order at least 2".into() });
    }
    let num_at = RFunc::from_poly(f.num().clone()).substitute(&binding)?;
    // den = (u - pole) * den(pole) * q
    let lead = RFunc::from_poly(pole.den().clone());
    num_at.checked_div(&(&q_at * &lead))
}

/// Residue via `num(pole) / den'(pole)`, valid at simple poles.
pub fn residue_by_derivative(f: &RFunc, u: usize, pole: &RFunc) -> Result<RFunc> {
    check_free(pole, u)?;
    let binding = [(u, pole.clone())];
    let d = RFunc::from_poly(f.den().derivative(u)).substitute(&binding)?;
    if d.is_zero() {
        return Err(FieldError::PoleOrder { point: pole.to_string(), detail: "derivative vanishes".into() });
    }
    RFunc::from_poly(f.num().clone()).substitute(&binding)?.checked_div(&d)
}

/// Coefficients of `u^0, u^-1, ..., u^-order` in the expansion of `f` at
/// `u = infinity`.
pub fn laurent_at_infinity(f: &RFunc, u: usize, order: usize) -> Result<Vec<RFunc>> {
    let vars = f.vars().clone();
    let dn = f.num().degree_in(u) as usize;
    let dd = f.den().degree_in(u) as usize;
    if !f.num().is_zero() && dn > dd {
        return Err(FieldError::UnboundedAtInfinity { num: dn, den: dd });
    }
    let nc = f.num().coeffs_in(u);
    let dc = f.den().coeffs_in(u);
    // In t = 1/u: N~_k = coefficient of u^(dd-k) in num, likewise for den.
    let nt = |k: usize| -> RFunc {
        if k > dd || dd - k >= nc.len() {
            RFunc::zero(&vars)
        } else {
            RFunc::from_poly(nc[dd - k].clone())
        }
    };
    let dt = |k: usize| -> RFunc {
        if k > dd {
            RFunc::zero(&vars)
        } else {
            RFunc::from_poly(dc[dd - k].clone())
        }
    };
    let d0_inv = dt(0).inv()?;
    let mut out: Vec<RFunc> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = nt(k);
        for i in 1..=k.min(dd) {
            let di = dt(i);
            if di.is_zero() || out[k - i].is_zero() {
                continue;
            }
            acc = &acc - &(&di * &out[k - i]);
        }
        out.push(&acc * &d0_inv);
    }
    Ok(out)
}

/// Residue at infinity, `-[u^-1] f`.
pub fn residue_at_infinity(f: &RFunc, u: usize) -> Result<RFunc> {
    let c = laurent_at_infinity(f, u, 1)?;
    Ok(-&c[1])
}
