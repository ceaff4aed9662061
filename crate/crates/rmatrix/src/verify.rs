use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::json;

use exact_field::{ratio, MPoly, OpMatrix, RFunc, Report, VarTable};
use quiver_fixedpoints::{Permutation, SpinProfile};
use shuffle_weights::restriction_matrix;

use crate::{chamber_inverse, RMatrixError, Result};

/// Restriction matrices and their inverses, one per chamber.
struct Chambers {
    forward: BTreeMap<Permutation, OpMatrix>,
    inverse: BTreeMap<Permutation, OpMatrix>,
}

impl Chambers {
    fn new(chambers: &[Permutation], v: u32, profile: &SpinProfile, vars: &Arc<VarTable>) -> Result<Self> {
        let mut forward = BTreeMap::new();
        let mut inverse = BTreeMap::new();
        for s in chambers {
            let m = restriction_matrix(s, v, profile, vars)?;
            inverse.insert(s.clone(), chamber_inverse(&m, s)?);
            forward.insert(s.clone(), m);
        }
        Ok(Chambers { forward, inverse })
    }

    fn r(&self, sp: &Permutation, s: &Permutation) -> Result<OpMatrix> {
        Ok(self.inverse[sp].compose(&self.forward[s])?)
    }
}

fn compare(report: &mut Report, check: &str, a: &OpMatrix, b: &OpMatrix, what: &str) {
    let n = a.matrix.nrows();
    let mut ok = a.matrix.ncols() == b.matrix.ncols() && n == b.matrix.nrows();
    let mut bad = String::new();
    if ok {
        'outer: for i in 0..n {
            for j in 0..a.matrix.ncols() {
                if a.matrix.get(i, j) != b.matrix.get(i, j) {
                    ok = false;
                    bad = format!(
                        "entry ({:?},{:?}): {} vs {}",
                        a.rows[i],
                        a.cols[j],
                        a.matrix.get(i, j),
                        b.matrix.get(i, j)
                    );
                    break 'outer;
                }
            }
        }
    }
    report.record(check, ok, || json!({ "comparison": what }), || bad);
}

fn perm(text: &str) -> Permutation {
    Permutation::parse(text, 3).expect("valid permutation")
}

/// Both reduced factorizations of `R_{id,321}` against the direct product.
pub fn braid_consistency_check(v: u32, profile: &SpinProfile) -> Result<Report> {
    if profile.w() != 3 {
        return Err(RMatrixError::Domain("braid check needs w = 3".into()));
    }
    let vars = profile.var_table(v as usize, &[]);
    let all = Permutation::all(3);
    let ch = Chambers::new(&all, v, profile, &vars)?;
    let id = Permutation::identity(3);
    let direct = ch.r(&id, &perm("321"))?;
    let left = ch.r(&id, &perm("213"))?.compose(&ch.r(&perm("213"), &perm("231"))?)?.compose(&ch.r(&perm("231"), &perm("321"))?)?;
    let right = ch.r(&id, &perm("132"))?.compose(&ch.r(&perm("132"), &perm("312"))?)?.compose(&ch.r(&perm("312"), &perm("321"))?)?;
    let mut report = Report::new("braid");
    compare(&mut report, "braid", &left, &direct, "R(id,213)R(213,231)R(231,321) = R(id,321)");
    compare(&mut report, "braid", &right, &direct, "R(id,132)R(132,312)R(312,321) = R(id,321)");
    compare(&mut report, "braid", &left, &right, "both factorizations agree");
    Ok(report)
}

/// `R_{s,s} = Id` and `R_{s'',s'} R_{s',s} = R_{s'',s}` for all chambers.
pub fn cocycle_check(profile: &SpinProfile, v: u32) -> Result<Report> {
    let vars = profile.var_table(v as usize, &[]);
    let all = Permutation::all(profile.w());
    let ch = Chambers::new(&all, v, profile, &vars)?;
    let mut report = Report::new("cocycle");
    let mut r = BTreeMap::new();
    for a in &all {
        for b in &all {
            r.insert((a.clone(), b.clone()), ch.r(a, b)?);
        }
    }
    for s in &all {
        let m = &r[&(s.clone(), s.clone())];
        report.record("identity", m.matrix.is_identity(), || json!({ "sigma": s.label() }), || m.matrix.to_string());
    }
    for a in &all {
        for b in &all {
            for c in &all {
                let lhs = r[&(a.clone(), b.clone())].compose(&r[&(b.clone(), c.clone())])?;
                let what = format!("R({a},{b})R({b},{c}) = R({a},{c})");
                compare(&mut report, "cocycle", &lhs, &r[&(a.clone(), c.clone())], &what);
            }
        }
    }
    Ok(report)
}

/// Splits `den` into factors `z_i - z_j - a hbar`, `|a| <= 2(l_i + l_j)`.
/// Returns `None` if something else remains.
pub fn linear_factors(den: &MPoly, profile: &SpinProfile) -> Option<Vec<(usize, usize, i64)>> {
    let ell = profile.values()?;
    let vars = den.vars();
    let hbar = MPoly::var_named(vars, "hbar").ok()?;
    let zs: Vec<MPoly> = (0..profile.w()).map(|j| MPoly::var_named(vars, &format!("z_{}", j + 1)).ok()).collect::<Option<_>>()?;
    let mut rest = den.clone();
    let mut found = Vec::new();
    'search: while !rest.is_constant() {
        for i in 0..zs.len() {
            for j in 0..zs.len() {
                if i == j {
                    continue;
                }
                let bound = 2 * (ell[i] + ell[j]) as i64;
                for a in -bound..=bound {
                    let cand = &(&zs[i] - &zs[j]) - &(&hbar * &MPoly::from_int(vars, a));
                    if let Some(q) = rest.div_exact(&cand) {
                        rest = q;
                        found.push((i, j, a));
                        continue 'search;
                    }
                }
            }
        }
        return None;
    }
    Some(found)
}

/// Every denominator of `m` factors into admissible linear forms.
pub fn denominator_scan(m: &OpMatrix, profile: &SpinProfile) -> Report {
    let mut report = Report::new("denominators");
    for i in 0..m.matrix.nrows() {
        for j in 0..m.matrix.ncols() {
            let e = m.matrix.get(i, j);
            let ok = linear_factors(e.den(), profile).is_some();
            report.record("denominator", ok, || json!({ "row": m.rows[i], "col": m.cols[j] }), || e.den().to_string());
        }
    }
    report
}

/// `R_{s',s}` is unchanged by `z_j -> z_j + c`.
pub fn translation_invariance_check(r: &OpMatrix, w: usize) -> Result<Report> {
    let vars = r.matrix.vars().clone();
    let mut report = Report::new("translation");
    for c in [ratio(3, 7), ratio(-5, 2)] {
        let bindings: Vec<(usize, RFunc)> = (0..w)
            .map(|j| {
                let idx = vars.require(&format!("z_{}", j + 1))?;
                Ok((idx, &RFunc::var(&vars, idx) + &RFunc::constant(&vars, c.clone())))
            })
            .collect::<Result<_>>()?;
        let shifted = r.matrix.try_map(|e| e.substitute(&bindings))?;
        let ok = shifted == r.matrix;
        report.tally("translation", ok, || format!("shift by {c} changes the matrix"));
    }
    Ok(report)
}
