use std::sync::Arc;

use exact_field::{binomial, int, ExactScalar, MPoly, RFunc, VarTable};
use quiver_fixedpoints::{FixedPoint, Spin, SpinProfile};
use shuffle_weights::closed_form_restriction_w2;

use crate::{RMatrixError, Result};

/// Spins and generators of the `z = z_1 - z_2` table.
struct W2 {
    table: Arc<VarTable>,
    hbar: MPoly,
    z: MPoly,
    l1: MPoly,
    l2: MPoly,
}

impl W2 {
    fn new(profile: &SpinProfile, table: &Arc<VarTable>, v: u32) -> Result<Self> {
        if profile.w() != 2 {
            return Err(RMatrixError::Domain("closed forms require w = 2".into()));
        }
        for s in profile.spins() {
            if let Spin::Value(l) = s {
                if *l < v {
                    return Err(RMatrixError::Domain(format!("closed forms require spins >= v = {v}")));
                }
            }
        }
        Ok(W2 {
            table: table.clone(),
            hbar: MPoly::var_named(table, "hbar")?,
            z: MPoly::var_named(table, "z")?,
            l1: profile.ell_poly(0, table)?,
            l2: profile.ell_poly(1, table)?,
        })
    }

    fn c(&self, n: i64) -> MPoly {
        MPoly::from_int(&self.table, n)
    }

    /// `z + (shift) hbar`.
    fn lin(&self, shift: &MPoly) -> MPoly {
        &self.z + &(shift * &self.hbar)
    }

    /// `l2 - l1 + k`.
    fn diff(&self, k: i64) -> MPoly {
        &(&self.l2 - &self.l1) + &self.c(k)
    }

    /// `l1 + l2 - k`.
    fn sum(&self, k: i64) -> MPoly {
        &(&self.l1 + &self.l2) - &self.c(k)
    }
}

/// Product of factors; constants are folded into the scalar.
#[derive(Default)]
struct Factors {
    scalar: Option<ExactScalar>,
    num: Vec<MPoly>,
    den: Vec<MPoly>,
}

impl Factors {
    fn new(c: ExactScalar) -> Self {
        Factors { scalar: Some(c), ..Default::default() }
    }

    fn mul(&mut self, p: MPoly) {
        match p.as_constant() {
            Some(c) => *self.scalar.get_or_insert_with(|| int(1)) *= c,
            None => self.num.push(p),
        }
    }

    fn div(&mut self, p: MPoly) {
        match p.as_constant() {
            Some(c) => *self.scalar.get_or_insert_with(|| int(1)) /= c,
            None => self.den.push(p),
        }
    }

    /// `(l - lo)(l - lo - 1)..(l - hi + 1)`.
    fn falling(&mut self, ell: &MPoly, lo: u32, hi: u32) {
        for k in lo..hi {
            self.mul(ell - &MPoly::from_int(ell.vars(), k as i64));
        }
    }

    fn build(self, table: &Arc<VarTable>) -> Result<RFunc> {
        let scalar = self.scalar.unwrap_or_else(|| int(1));
        if scalar == int(0) {
            return Ok(RFunc::zero(table));
        }
        Ok(RFunc::from_factors(table, scalar, &self.num, &self.den)?)
    }
}

fn sign(e: u32) -> ExactScalar {
    int(if e.is_multiple_of(2) { 1 } else { -1 })
}

/// `(A^s)_{ij} = W^s_{(v-j,j)}|_{(v-i,i)}` for `s` the identity or the swap.
pub fn a_closed_form(swap: bool, i: u32, j: u32, v: u32, profile: &SpinProfile, table: &Arc<VarTable>) -> Result<RFunc> {
    if i > v || j > v {
        return Err(RMatrixError::Domain(format!("indices ({i},{j}) exceed v = {v}")));
    }
    if !swap {
        return Ok(closed_form_restriction_w2(&FixedPoint(vec![v - j, j]), &FixedPoint(vec![v - i, i]), profile, table)?);
    }
    let k = W2::new(profile, table, v)?;
    if i > j {
        return Ok(RFunc::zero(table));
    }
    let mut f = Factors::new(sign(j * (v + 1)) * binomial((v - i) as u64, (v - j) as u64));
    f.falling(&k.l1, v - j, v - i);
    for _ in i..j {
        f.mul(&k.hbar * &k.c(2));
    }
    for b in 0..(v - j) as i64 {
        f.mul(k.lin(&k.diff(-2 * (i as i64 - b))));
    }
    for a in 0..i as i64 {
        f.mul(k.lin(&k.sum(2 * a)));
    }
    f.build(table)
}

/// Closed form of `(A^id)^{-1}_{ji}`.
pub fn a_inverse_closed_form(j: u32, i: u32, v: u32, profile: &SpinProfile, table: &Arc<VarTable>) -> Result<RFunc> {
    if i > v || j > v {
        return Err(RMatrixError::Domain(format!("indices ({j},{i}) exceed v = {v}")));
    }
    let k = W2::new(profile, table, v)?;
    if i > j {
        return Ok(RFunc::zero(table));
    }
    let (vi, ii) = (v as i64, i as i64);
    let mut f = Factors::new(sign((j + 1) * v + j) * binomial(j as u64, i as u64));
    f.falling(&k.l2, i, j);
    for _ in i..j {
        f.mul(&k.hbar * &k.c(2));
    }
    f.mul(k.lin(&k.diff(2 * (vi - 2 * ii))));
    for b in 0..=j as i64 {
        f.div(k.lin(&k.diff(2 * (vi - ii - b))));
    }
    for a in 0..(v - i) as i64 {
        f.div(k.lin(&-&k.sum(2 * a)));
    }
    f.build(table)
}

/// The single-sum closed form of `R_{jj'}(z)`.
pub fn r_closed_form_w2(j: u32, jp: u32, v: u32, profile: &SpinProfile, table: &Arc<VarTable>) -> Result<RFunc> {
    if j > v || jp > v {
        return Err(RMatrixError::Domain(format!("indices ({j},{jp}) exceed v = {v}")));
    }
    let k = W2::new(profile, table, v)?;
    let vi = v as i64;
    let outer = if (v + (j + jp) * (v + 1)).is_multiple_of(2) { 1 } else { -1 };
    let mut total = RFunc::zero(table);
    for i in 0..=j.min(jp) {
        let ii = i as i64;
        let mut f = Factors::new(int(outer) * binomial(j as u64, i as u64) * binomial((v - i) as u64, (v - jp) as u64));
        f.falling(&k.l2, i, j);
        f.falling(&k.l1, v - jp, v - i);
        for _ in 0..(j + jp - 2 * i) {
            f.mul(&k.hbar * &k.c(2));
        }
        f.mul(k.lin(&k.diff(2 * (vi - 2 * ii))));
        for b in 0..(v - jp) as i64 {
            f.mul(k.lin(&k.diff(-2 * (ii - b))));
        }
        for a in 0..ii {
            f.mul(k.lin(&k.sum(2 * a)));
        }
        for b in 0..=j as i64 {
            f.div(k.lin(&k.diff(2 * (vi - ii - b))));
        }
        for a in 0..(vi - ii) {
            f.div(k.lin(&-&k.sum(2 * a)));
        }
        total = &total + &f.build(table)?;
    }
    Ok(total)
}
