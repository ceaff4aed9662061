use std::cmp::Ordering;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use exact_field::{MPoly, Report, VarTable};
use quiver_fixedpoints::{enumerate_fixed_points, sigma_compare, FixedPoint, Permutation, SpinProfile};

use crate::weight::{restrict, weight_function};
use crate::{named, Result};

/// Degree with `deg z_j = 1` and every other variable of degree zero.
pub fn z_degree(p: &MPoly) -> Option<u32> {
    let weights: Vec<u32> = p
        .vars()
        .names()
        .iter()
        .map(|n| u32::from(n == "z" || n.starts_with("z_")))
        .collect();
    p.weighted_degree(&weights)
}

/// Product formula for the diagonal restriction `W^s_lambda|_lambda`,
/// including the sign `(-1)^{sum_{s<a} v_a (v_s + 1)}` carried by the
/// identity-chamber partition sum. Columns are taken in chamber order.
pub fn diagonal_product_formula(
    sigma: &Permutation,
    lambda: &FixedPoint,
    profile: &SpinProfile,
    vars: &Arc<VarTable>,
) -> Result<MPoly> {
    let hbar = named(vars, "hbar")?;
    let inv = sigma.inverse();
    let w = profile.w();
    let cols: Vec<(i64, MPoly, MPoly)> = (0..w)
        .map(|k| {
            let j = inv.apply(k);
            Ok((lambda.0[j] as i64, named(vars, &format!("z_{}", j + 1))?, profile.ell_poly(j, vars)?))
        })
        .collect::<Result<_>>()?;
    let c = |n: i64| MPoly::from_int(vars, n);
    let mut acc = MPoly::one(vars);
    let mut sign_exp = 0i64;
    for s in 0..w {
        for a in s + 1..w {
            let (vs, zs, ls) = &cols[s];
            let (va, za, la) = &cols[a];
            sign_exp += va * (vs + 1);
            for i in (vs - va + 1)..=*vs {
                let shift = &(&c(2 * i) + la) - ls;
                acc = &acc * &(&(zs - za) + &(&shift * &hbar));
            }
            for i in 0..*vs {
                let shift = &(ls + la) - &c(2 * i);
                acc = &acc * &(&(za - zs) + &(&shift * &hbar));
            }
        }
    }
    Ok(if sign_exp % 2 == 1 { -acc } else { acc })
}

/// Checks triangularity, the diagonal product formula and the degree bounds
/// for every chamber and every pair of fixed points of grade `v`.
pub fn verify_weight_properties(profile: &SpinProfile, v: u32) -> Result<Report> {
    let vars = profile.var_table(v as usize, &[]);
    let points = enumerate_fixed_points(profile, v);
    let w = profile.w();
    let expected_degree = (w as u32 - 1) * v;
    let chambers = Permutation::all(w);
    let reports: Vec<Result<Report>> = chambers
        .par_iter()
        .map(|sigma| {
            let mut report = Report::new("weight-properties");
            for lam in &points {
                let wf = weight_function(sigma, lam, profile, &vars)?;
                let diag = restrict(&wf, lam)?;
                let diag_poly = diag.num().clone();
                let formula = diagonal_product_formula(sigma, lam, profile, &vars)?;
                let ctx = || json!({ "sigma": sigma.label(), "lambda": lam.to_json() });
                report.record("diagonal", diag_poly == formula, ctx, || format!("{diag} != {formula}"));
                let diag_deg = z_degree(&diag_poly);
                report.record("diagonal_degree", diag_deg == Some(expected_degree), ctx, || {
                    format!("degree {diag_deg:?}, expected {expected_degree}")
                });
                for mu in &points {
                    if mu == lam {
                        continue;
                    }
                    let entry = restrict(&wf, mu)?;
                    let ctx = || json!({ "sigma": sigma.label(), "lambda": lam.to_json(), "mu": mu.to_json() });
                    match sigma_compare(lam, mu, sigma)? {
                        Ordering::Less => {
                            report.record("triangularity", entry.is_zero(), ctx, || format!("W|_mu = {entry}"));
                        }
                        _ => {
                            let d = z_degree(entry.num());
                            let ok = d.is_none_or(|d| Some(d) <= diag_deg);
                            report.record("degree_dominance", ok, ctx, || {
                                format!("off-diagonal degree {d:?} exceeds diagonal degree {diag_deg:?}")
                            });
                        }
                    }
                }
            }
            Ok(report)
        })
        .collect();
    let mut total = Report::new("weight-properties");
    for r in reports {
        total.merge(r?);
    }
    Ok(total)
}
