//! The F-basis of `(K^2)^{(x) v}`: kets `R_s(y)|sort(a)>` and dual bras
//! built from products of six-vertex R-matrices, and the quasi-diagonal form
//! of the column transfer operators in that basis.

use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use exact_field::{int, MPoly, RFunc, Report, VarTable};

use crate::sixvertex::sixvertex_r;
use crate::transfer::{binary_basis, column_transfer, embed_two_site, index_of, Column, TensorCovector, TensorVector};
use crate::{LatticeError, Result};

/// Zeros first, then ones.
pub fn sort(a: &[u32]) -> Vec<u32> {
    let mut s = a.to_vec();
    s.sort_unstable();
    s
}

/// Ones first, then zeros.
pub fn rsort(b: &[u32]) -> Vec<u32> {
    let mut s = b.to_vec();
    s.sort_unstable_by(|x, y| y.cmp(x));
    s
}

/// Minimal `s` (0-based) with `sort(a)_i = a_{s(i)}`: the zeros of `a` in
/// order, then its ones in order.
pub fn ket_permutation(a: &[u32]) -> Vec<usize> {
    let zeros = (0..a.len()).filter(|&i| a[i] == 0);
    zeros.chain((0..a.len()).filter(|&i| a[i] == 1)).collect()
}

/// Minimal `t` (0-based) with `b_i = rsort(b)_{t(i)}`.
pub fn bra_permutation(b: &[u32]) -> Vec<usize> {
    let ones = b.iter().filter(|&&x| x == 1).count();
    let (mut next_one, mut next_zero) = (0, ones);
    b.iter()
        .map(|&x| {
            let slot = if x == 1 { &mut next_one } else { &mut next_zero };
            *slot += 1;
            *slot - 1
        })
        .collect()
}

/// Crossings of a wiring diagram, in the order they act. Lines are named by
/// their `y` index; `right[k]` is the line entering at position `k` and
/// `left[i]` the line leaving at position `i`. Each crossing of positions
/// `p, p + 1` carries `y_rising - y_falling`.
pub fn wiring(right: &[usize], left: &[usize], ys: &[MPoly]) -> Result<Vec<(usize, MPoly)>> {
    let mut rank = vec![usize::MAX; ys.len()];
    for (pos, &line) in left.iter().enumerate() {
        rank[line] = pos;
    }
    let mut arr = right.to_vec();
    let mut sorted_right = right.to_vec();
    sorted_right.sort_unstable();
    if right.len() != ys.len() || sorted_right != (0..ys.len()).collect::<Vec<_>>() || rank.contains(&usize::MAX) {
        return Err(LatticeError::Domain(format!("{right:?} and {left:?} are not arrangements of {} lines", ys.len())));
    }
    let mut crossings = Vec::new();
    loop {
        let Some(p) = (0..arr.len().saturating_sub(1)).find(|&p| rank[arr[p]] > rank[arr[p + 1]]) else {
            return Ok(crossings);
        };
        crossings.push((p, &ys[arr[p + 1]] - &ys[arr[p]]));
        arr.swap(p, p + 1);
    }
}

fn crossing_op(p: usize, u: &MPoly, hbar: &MPoly, v: usize) -> Result<exact_field::OpMatrix> {
    embed_two_site(&sixvertex_r(&RFunc::from_poly(u.clone()), &RFunc::from_poly(hbar.clone())), p, v)
}

/// `kappa_a = prod_{a_i = 1, a_j = 0} beta(y_i - y_j)`.
pub fn kappa(a: &[u32], ys: &[MPoly], hbar: &MPoly) -> RFunc {
    let vars = hbar.vars();
    let two_h = hbar.scale(&int(2));
    let mut num = Vec::new();
    let mut den = Vec::new();
    for i in (0..a.len()).filter(|&i| a[i] == 1) {
        for j in (0..a.len()).filter(|&j| a[j] == 0) {
            let d = &ys[i] - &ys[j];
            den.push(&d - &two_h);
            num.push(d);
        }
    }
    RFunc::from_factors(vars, int(1), &num, &den).expect("distinct linear factors")
}

/// `R_s(y_1, .., y_v) |sort(a)>` for a permutation `s` with `sort(a)_i = a_{s(i)}`.
pub fn tilde_ket_with(a: &[u32], sigma: &[usize], ys: &[MPoly], hbar: &MPoly) -> Result<TensorVector> {
    let v = a.len();
    let sorted = sort(a);
    if sigma.len() != v || (0..v).any(|i| sorted[i] != a[sigma[i]]) {
        return Err(LatticeError::Domain(format!("{sigma:?} does not sort {a:?}")));
    }
    let identity: Vec<usize> = (0..v).collect();
    let mut ket = TensorVector::basis(hbar.vars(), &sorted)?;
    for (p, u) in wiring(sigma, &identity, ys)? {
        ket = ket.apply(&crossing_op(p, &u, hbar, v)?);
    }
    Ok(ket)
}

/// `kappa_b^{-1} <rsort(b)| R_t(y_{t^-1(1)}, .., y_{t^-1(v)})`.
pub fn tilde_bra(b: &[u32], ys: &[MPoly], hbar: &MPoly) -> Result<TensorCovector> {
    let v = b.len();
    let tau = bra_permutation(b);
    let mut left = vec![0; v];
    for (i, &t) in tau.iter().enumerate() {
        left[t] = i;
    }
    let identity: Vec<usize> = (0..v).collect();
    let mut bra = TensorCovector::basis(hbar.vars(), &rsort(b))?;
    for (p, u) in wiring(&identity, &left, ys)?.iter().rev() {
        bra = bra.apply(&crossing_op(*p, u, hbar, v)?);
    }
    Ok(bra.scale(&kappa(b, ys, hbar).inv()?))
}

/// Tilded kets and bras with the constants `kappa`, indexed like
/// [`binary_basis`].
#[derive(Debug, Clone, PartialEq)]
pub struct FBasis {
    pub v: usize,
    pub kets: Vec<TensorVector>,
    pub bras: Vec<TensorCovector>,
    pub kappas: Vec<RFunc>,
}

impl FBasis {
    pub fn ket(&self, a: &[u32]) -> &TensorVector {
        &self.kets[index_of(a)]
    }

    pub fn bra(&self, b: &[u32]) -> &TensorCovector {
        &self.bras[index_of(b)]
    }

    pub fn kappa(&self, a: &[u32]) -> &RFunc {
        &self.kappas[index_of(a)]
    }

    /// `<b~|a~>` for every pair, with the first entry differing from the
    /// identity if any.
    pub fn duality_defect(&self) -> Option<(Vec<u32>, Vec<u32>, RFunc)> {
        let basis = binary_basis(self.v);
        for b in &basis {
            for a in &basis {
                let pairing = self.bra(b).pair(self.ket(a));
                let ok = if a == b { pairing.is_one() } else { pairing.is_zero() };
                if !ok {
                    return Some((b.clone(), a.clone(), pairing));
                }
            }
        }
        None
    }
}

/// The F-basis for `v = ys.len()` lines.
pub fn f_basis(ys: &[MPoly], hbar: &MPoly) -> Result<FBasis> {
    let basis = binary_basis(ys.len());
    let kets = basis.par_iter().map(|a| tilde_ket_with(a, &ket_permutation(a), ys, hbar)).collect::<Result<_>>()?;
    let bras = basis.par_iter().map(|b| tilde_bra(b, ys, hbar)).collect::<Result<_>>()?;
    let kappas = basis.iter().map(|a| kappa(a, ys, hbar)).collect();
    Ok(FBasis { v: ys.len(), kets, bras, kappas })
}

/// Closed form of `<b~| T^(l)_{m,0}(x) |a~>`.
pub fn lemma_lm_closed_form(l: &MPoly, m: u32, b: &[u32], a: &[u32], x: &MPoly, ys: &[MPoly], hbar: &MPoly) -> RFunc {
    let vars = hbar.vars();
    let diff: i64 = b.iter().map(|&t| t as i64).sum::<i64>() - a.iter().map(|&t| t as i64).sum::<i64>();
    if diff != m as i64 || (0..a.len()).any(|i| b[i] == 0 && a[i] == 1) {
        return RFunc::zero(vars);
    }
    let two_h = hbar.scale(&int(2));
    let lh = l * hbar;
    let mut num = Vec::new();
    let mut den = Vec::new();
    for k in 0..m {
        num.push(&two_h * &(l - &MPoly::from_int(vars, k as i64)));
    }
    let raised: Vec<usize> = (0..a.len()).filter(|&i| b[i] == 1 && a[i] == 0).collect();
    let empty: Vec<usize> = (0..a.len()).filter(|&j| b[j] == 0 && a[j] == 0).collect();
    for &i in &raised {
        for &j in &empty {
            let d = &ys[i] - &ys[j];
            num.push(&d - &two_h);
            den.push(d);
        }
    }
    for i in 0..a.len() {
        match (b[i], a[i]) {
            (0, 0) => num.push(&(&ys[i] - x) - &lh),
            (1, 1) => num.push(&(&ys[i] - x) + &lh),
            _ => {}
        }
    }
    RFunc::from_factors(vars, int(1), &num, &den).expect("nonzero denominators")
}

/// Variables `hbar, l, x, y_1..y_v` used by the F-basis checks.
pub fn fbasis_table(v: usize) -> Arc<VarTable> {
    let mut names = vec!["hbar".to_string(), "l".to_string(), "x".to_string()];
    names.extend((1..=v).map(|i| format!("y_{i}")));
    VarTable::from_names(&names).expect("distinct names")
}

/// Compares `<b~| T^(l)_{m,0}(x) |a~>`, computed by conjugating the column
/// transfer operator, with the closed form for all binary `a, b` of length
/// `v`. A spin of `None` keeps `l` symbolic.
pub fn lemma_lm_check(l: Option<u32>, m: u32, v: usize) -> Result<Report> {
    if l.is_some_and(|l| m > l) {
        return Err(LatticeError::Domain(format!("m = {m} exceeds the spin")));
    }
    let vars = fbasis_table(v);
    let var = |name: &str| MPoly::var_named(&vars, name);
    let hbar = var("hbar")?;
    let x = var("x")?;
    let ys: Vec<MPoly> = (1..=v).map(|i| var(&format!("y_{i}"))).collect::<std::result::Result<_, _>>()?;
    let l_poly = match l {
        Some(l) => MPoly::from_int(&vars, l as i64),
        None => var("l")?,
    };
    let fb = f_basis(&ys, &hbar)?;
    let t = column_transfer(&Column { l: l_poly.clone(), bound: l, x: x.clone() }, m, 0, &ys, &hbar)?;
    let basis = binary_basis(v);
    let images: Vec<TensorVector> = basis.par_iter().map(|a| fb.ket(a).apply(&t)).collect();
    let mut report = Report::new("lemma_lm");
    if let Some((b, a, value)) = fb.duality_defect() {
        report.record("duality", false, || json!({ "bra": b, "ket": a }), || format!("{value}"));
    } else {
        report.tally("duality", true, String::new);
    }
    let spin = l.map_or(json!("l"), |l| json!(l));
    for b in &basis {
        for (a, image) in basis.iter().zip(&images) {
            let got = fb.bra(b).pair(image);
            let want = lemma_lm_closed_form(&l_poly, m, b, a, &x, &ys, &hbar);
            report.record(
                "lm_iii",
                got == want,
                || json!({ "l": spin, "m": m, "bra": b, "ket": a }),
                || format!("{got} vs {want}"),
            );
        }
    }
    Ok(report)
}
