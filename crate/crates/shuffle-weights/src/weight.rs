use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use exact_field::{json::mpoly_to_json, MPoly, Matrix, OpMatrix, RFunc, VarTable};
use quiver_fixedpoints::{chern_roots, enumerate_fixed_points, FixedPoint, Permutation, SpinProfile};

use crate::shuffle::{is_symmetric, shuffle_product, ShuffleElement};
use crate::{divide_vandermonde, named, y_var, Result, WeightError};

/// How a weight function is assembled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Direct sum over ordered set partitions of `1..v`.
    PartitionSum,
    /// Iterated framed shuffle product `1 * 1 * .. * 1`.
    IteratedShuffle,
}

/// `W^s_lambda` as a polynomial in `hbar`, the spins, `z_j` and `y_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFunction {
    pub lambda: FixedPoint,
    pub sigma: Permutation,
    pub profile: SpinProfile,
    pub value: MPoly,
}

impl WeightFunction {
    pub fn v(&self) -> usize {
        self.lambda.total() as usize
    }

    pub fn to_json(&self) -> Value {
        let sigma: Vec<usize> = self.sigma.images().iter().map(|i| i + 1).collect();
        json!({ "sigma": sigma, "lambda": self.lambda.to_json(), "value": mpoly_to_json(&self.value) })
    }
}

/// A framing column in chamber order: its occupation, `z`, and `l hbar`.
struct Column {
    physical: usize,
    count: u32,
    z: MPoly,
    ell_hbar: MPoly,
}

/// Columns reordered by `s`: slot `k` carries the physical column `s^-1(k)`.
fn chamber_columns(sigma: &Permutation, lambda: &FixedPoint, profile: &SpinProfile, vars: &Arc<VarTable>) -> Result<Vec<Column>> {
    let hbar = named(vars, "hbar")?;
    let inv = sigma.inverse();
    (0..profile.w())
        .map(|k| {
            let j = inv.apply(k);
            Ok(Column {
                physical: j,
                count: lambda.0[j],
                z: named(vars, &format!("z_{}", j + 1))?,
                ell_hbar: &profile.ell_poly(j, vars)? * &hbar,
            })
        })
        .collect()
}

/// Block assignments `c: 0..v -> 0..w` with the prescribed block sizes.
fn assignments(counts: &[u32]) -> Vec<Vec<usize>> {
    fn rec(left: &mut Vec<u32>, cur: &mut Vec<usize>, total: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for k in 0..left.len() {
            if left[k] > 0 {
                left[k] -= 1;
                cur.push(k);
                rec(left, cur, total, out);
                cur.pop();
                left[k] += 1;
            }
        }
    }
    let total = counts.iter().sum::<u32>() as usize;
    let mut out = Vec::new();
    rec(&mut counts.to_vec(), &mut Vec::new(), total, &mut out);
    out
}

fn partition_sum(columns: &[Column], vars: &Arc<VarTable>) -> Result<MPoly> {
    let v: usize = columns.iter().map(|c| c.count as usize).sum();
    let ys: Vec<MPoly> = (0..v).map(|i| y_var(vars, i)).collect::<Result<_>>()?;
    let two_hbar = &named(vars, "hbar")? * &MPoly::from_int(vars, 2);
    let counts: Vec<u32> = columns.iter().map(|c| c.count).collect();
    let terms: Vec<MPoly> = assignments(&counts)
        .into_par_iter()
        .map(|c| {
            // Summand times the Vandermonde: same-block pairs keep (y_p - y_q),
            // cross pairs contribute (y_later - y_earlier - 2 hbar) and a sign.
            let mut term = MPoly::one(vars);
            let mut inversions = 0usize;
            for q in 0..v {
                for p in 0..q {
                    let factor = match c[p].cmp(&c[q]) {
                        std::cmp::Ordering::Equal => &ys[p] - &ys[q],
                        std::cmp::Ordering::Less => &(&ys[q] - &ys[p]) - &two_hbar,
                        std::cmp::Ordering::Greater => {
                            inversions += 1;
                            &(&ys[p] - &ys[q]) - &two_hbar
                        }
                    };
                    term = &term * &factor;
                }
            }
            for (i, &s) in c.iter().enumerate() {
                for (a, col) in columns.iter().enumerate() {
                    if a > s {
                        term = &term * &(&(&col.z - &ys[i]) + &col.ell_hbar);
                    } else if a < s {
                        term = &term * &(&(&ys[i] - &col.z) + &col.ell_hbar);
                    }
                }
            }
            if inversions % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .collect();
    let mut total = MPoly::zero(vars);
    for t in &terms {
        total = &total + t;
    }
    divide_vandermonde(total, &ys)
}

fn iterated_shuffle(columns: &[Column], profile: &SpinProfile, vars: &Arc<VarTable>) -> Result<MPoly> {
    let w = profile.w();
    let mut acc = ShuffleElement::one(vars, 0, vec![0; w]);
    for col in columns {
        let mut n = vec![0; w];
        n[col.physical] = 1;
        let unit = ShuffleElement::one(vars, col.count as usize, n);
        acc = shuffle_product(&acc, &unit, profile)?;
    }
    Ok(acc.value)
}

/// `W^s_lambda` computed by the partition sum.
pub fn weight_function(
    sigma: &Permutation,
    lambda: &FixedPoint,
    profile: &SpinProfile,
    vars: &Arc<VarTable>,
) -> Result<WeightFunction> {
    weight_function_with(Method::PartitionSum, sigma, lambda, profile, vars)
}

/// `W^s_lambda` by the chosen method. Fixed-point labels are physical: the
/// chamber `s` reorders the columns, together with their `z` and spin, as
/// `(s^-1(1), .., s^-1(w))` before applying the identity-chamber formula.
pub fn weight_function_with(
    method: Method,
    sigma: &Permutation,
    lambda: &FixedPoint,
    profile: &SpinProfile,
    vars: &Arc<VarTable>,
) -> Result<WeightFunction> {
    if sigma.len() != profile.w() || lambda.w() != profile.w() {
        return Err(WeightError::Size(format!("w={} but sigma={sigma}, lambda={lambda}", profile.w())));
    }
    if !profile.contains(lambda) {
        return Err(quiver_fixedpoints::FixedPointError::OutOfBounds {
            point: lambda.to_string(),
            profile: profile.to_string(),
        }
        .into());
    }
    let columns = chamber_columns(sigma, lambda, profile, vars)?;
    let value = match method {
        Method::PartitionSum => partition_sum(&columns, vars)?,
        Method::IteratedShuffle => iterated_shuffle(&columns, profile, vars)?,
    };
    if !is_symmetric(&value, lambda.total() as usize)? {
        return Err(WeightError::NotPolynomial(format!("W at {lambda} is not symmetric in y")));
    }
    Ok(WeightFunction { lambda: lambda.clone(), sigma: sigma.clone(), profile: profile.clone(), value })
}

/// `W|_mu`: substitutes the Chern roots of `mu` for `y_1..y_v`.
pub fn restrict(wf: &WeightFunction, mu: &FixedPoint) -> Result<RFunc> {
    if mu.total() != wf.lambda.total() {
        return Err(WeightError::Size(format!("cannot restrict W at {} to {mu}", wf.lambda)));
    }
    let vars = wf.value.vars();
    let roots = chern_roots(mu, &wf.profile, vars)?;
    let bindings: Vec<(usize, MPoly)> = roots
        .into_iter()
        .enumerate()
        .map(|(i, r)| Ok((vars.require(&format!("y_{}", i + 1))?, r)))
        .collect::<Result<_>>()?;
    Ok(RFunc::from_poly(wf.value.substitute(&bindings)))
}

/// `[W^s_lambda|_mu]` with rows `mu` and columns `lambda` in canonical order.
pub fn restriction_matrix(sigma: &Permutation, v: u32, profile: &SpinProfile, vars: &Arc<VarTable>) -> Result<OpMatrix> {
    let points = enumerate_fixed_points(profile, v);
    let weights: Vec<WeightFunction> = points
        .par_iter()
        .map(|lam| weight_function(sigma, lam, profile, vars))
        .collect::<Result<_>>()?;
    let mut m = Matrix::zeros(vars, points.len(), points.len());
    for (c, wf) in weights.iter().enumerate() {
        for (r, mu) in points.iter().enumerate() {
            m.set(r, c, restrict(wf, mu)?);
        }
    }
    let labels: Vec<Vec<u32>> = points.iter().map(|p| p.0.clone()).collect();
    Ok(OpMatrix::new(labels.clone(), labels, m)?)
}
