use rayon::prelude::*;

use exact_field::MPoly;
use quiver_fixedpoints::SpinProfile;

use crate::{divide_vandermonde, named, y_var, Result, WeightError};

/// An element of `SH_{v, n}`: a polynomial in `hbar`, `y_1..y_v` and the
/// framing variables `z_j` with `n_j = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleElement {
    pub v: usize,
    pub n: Vec<u32>,
    pub value: MPoly,
    pub symmetric_in_y: bool,
}

impl ShuffleElement {
    /// Checks the variable support and records whether the value is symmetric.
    pub fn new(v: usize, n: Vec<u32>, value: MPoly) -> Result<Self> {
        let vars = value.vars().clone();
        for (i, name) in vars.names().iter().enumerate() {
            if !value.uses_var(i) {
                continue;
            }
            if let Some(k) = name.strip_prefix("y_").and_then(|s| s.parse::<usize>().ok()) {
                if k > v {
                    return Err(WeightError::Dimension(format!("{name} used in SH with v={v}")));
                }
            }
            if let Some(j) = name.strip_prefix("z_").and_then(|s| s.parse::<usize>().ok()) {
                if n.get(j - 1).copied().unwrap_or(0) == 0 {
                    return Err(WeightError::Dimension(format!("{name} used without framing")));
                }
            }
        }
        let symmetric_in_y = is_symmetric(&value, v)?;
        Ok(ShuffleElement { v, n, value, symmetric_in_y })
    }

    /// The unit `1` of `SH_{v, n}`.
    pub fn one(vars: &std::sync::Arc<exact_field::VarTable>, v: usize, n: Vec<u32>) -> Self {
        ShuffleElement { v, n, value: MPoly::one(vars), symmetric_in_y: true }
    }
}

/// Invariance under every adjacent transposition of `y_1..y_v`.
pub(crate) fn is_symmetric(p: &MPoly, v: usize) -> Result<bool> {
    let vars = p.vars();
    for i in 0..v.saturating_sub(1) {
        let a = vars.require(&format!("y_{}", i + 1))?;
        let b = vars.require(&format!("y_{}", i + 2))?;
        let mut perm: Vec<usize> = (0..vars.len()).collect();
        perm.swap(a, b);
        if p.permute_vars(&perm) != *p {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Subsets of `0..v` of size `k` in lexicographic order.
pub(crate) fn subsets(v: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, v: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..v {
            if v - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, v, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, v, k, &mut Vec::new(), &mut out);
    out
}

/// Renames `y_1..y_k` of `p` to `y_{targets[0]+1}..`.
fn relabel_y(p: &MPoly, targets: &[usize]) -> Result<MPoly> {
    let vars = p.vars();
    let mut perm: Vec<usize> = (0..vars.len()).collect();
    for (t, &dst) in targets.iter().enumerate() {
        let from = vars.require(&format!("y_{}", t + 1))?;
        let to = vars.require(&format!("y_{}", dst + 1))?;
        perm[from] = to;
    }
    Ok(p.permute_vars(&perm))
}

/// The framed shuffle product `f * g`, summed over `(v_1, v_2)`-shuffles.
pub fn shuffle_product(f: &ShuffleElement, g: &ShuffleElement, profile: &SpinProfile) -> Result<ShuffleElement> {
    let vars = f.value.vars().clone();
    let w = profile.w();
    if f.n.len() != w || g.n.len() != w {
        return Err(WeightError::Dimension(format!("framing vectors must have length {w}")));
    }
    let n: Vec<u32> = f.n.iter().zip(&g.n).map(|(a, b)| a + b).collect();
    for (j, &nj) in n.iter().enumerate() {
        if nj > 1 {
            return Err(WeightError::Dimension(format!("framing vertex {} is used by both factors", j + 1)));
        }
    }
    let (v1, v2) = (f.v, g.v);
    let v = v1 + v2;
    let ys: Vec<MPoly> = (0..v).map(|i| y_var(&vars, i)).collect::<Result<_>>()?;
    let hbar = named(&vars, "hbar")?;
    let two_hbar = &hbar * &MPoly::from_int(&vars, 2);
    let g_value = g.value.to_table(&vars)?;
    // Framing factors: (z_j - y'_a + l_j hbar) for j in n_2, (y''_b - z_j + l_j hbar) for j in n_1.
    let mut left_frames = Vec::new();
    let mut right_frames = Vec::new();
    for j in 0..w {
        let z = named(&vars, &format!("z_{}", j + 1))?;
        let lh = &profile.ell_poly(j, &vars)? * &hbar;
        if g.n[j] == 1 {
            left_frames.push((z.clone(), lh.clone()));
        }
        if f.n[j] == 1 {
            right_frames.push((z, lh));
        }
    }
    let terms: Vec<Result<MPoly>> = subsets(v, v1)
        .into_par_iter()
        .map(|a_set| {
            let b_set: Vec<usize> = (0..v).filter(|i| !a_set.contains(i)).collect();
            let mut term = &relabel_y(&f.value, &a_set)? * &relabel_y(&g_value, &b_set)?;
            let mut inversions = 0usize;
            for q in 0..v {
                for p in 0..q {
                    let (pa, qa) = (a_set.contains(&p), a_set.contains(&q));
                    let factor = if pa == qa {
                        &ys[p] - &ys[q]
                    } else if pa {
                        &(&ys[q] - &ys[p]) - &two_hbar
                    } else {
                        inversions += 1;
                        &(&ys[p] - &ys[q]) - &two_hbar
                    };
                    term = &term * &factor;
                }
            }
            for &a in &a_set {
                for (z, lh) in &left_frames {
                    term = &term * &(&(z - &ys[a]) + lh);
                }
            }
            for &b in &b_set {
                for (z, lh) in &right_frames {
                    term = &term * &(&(&ys[b] - z) + lh);
                }
            }
            Ok(if inversions % 2 == 1 { -term } else { term })
        })
        .collect();
    let mut total = MPoly::zero(&vars);
    for t in terms {
        total = &total + &t?;
    }
    let value = divide_vandermonde(total, &ys)?;
    let symmetric_in_y = is_symmetric(&value, v)?;
    Ok(ShuffleElement { v, n, value, symmetric_in_y })
}
