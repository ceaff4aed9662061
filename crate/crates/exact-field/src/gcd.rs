//! Multivariate GCD over the rationals by recursive primitive pseudo-remainder
//! sequences in the most significant variable.

use crate::poly::{MPoly, Mono};
use crate::scalar::ExactScalar;

/// Monic greatest common divisor. `gcd(0, 0) = 0`.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(a.vars());
    }
    if a == b {
        return a.monic();
    }
    if a.nterms() == 1 || b.nterms() == 1 {
        return monomial_gcd(a, b);
    }
    let x = match (a.highest_var(), b.highest_var()) {
        (Some(i), Some(j)) => i.max(j),
        _ => unreachable!("non-constant polynomials use a variable"),
    };
    if !a.uses_var(x) {
        return gcd(a, &content_in(b, x));
    }
    if !b.uses_var(x) {
        return gcd(&content_in(a, x), b);
    }
    // Quick exit through exact division, common when one factor divides the other.
    if let Some(g) = divides_either(a, b) {
        return g;
    }
    let ca = content_in(a, x);
    let cb = content_in(b, x);
    let g_content = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    if coprime_in(&pa, &pb, x) {
        return g_content.monic();
    }
    let (r0, r1) = if pa.degree_in(x) >= pb.degree_in(x) { (pa, pb) } else { (pb, pa) };
    let g_prim = subresultant_last(r0, r1, x);
    if !g_prim.uses_var(x) {
        return g_content.monic();
    }
    (&primitive_in(&g_prim, x) * &g_content).monic()
}

/// Last nonzero element of the subresultant remainder sequence of `a`, `b`
/// with respect to `x` (`deg_x a >= deg_x b`).
fn subresultant_last(mut a: MPoly, mut b: MPoly, x: usize) -> MPoly {
    let vars = a.vars().clone();
    let mut g = MPoly::one(&vars);
    let mut h = MPoly::one(&vars);
    loop {
        let delta = a.degree_in(x) - b.degree_in(x);
        let r = full_pseudo_remainder(&a, &b, x);
        if r.is_zero() {
            return b;
        }
        if !r.uses_var(x) {
            return MPoly::one(&vars);
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r.div_exact(&divisor).expect("subresultant division is exact");
        g = a.lc_in(x);
        h = if delta == 0 {
            h
        } else {
            let num = g.pow(delta);
            num.div_exact(&h.pow(delta - 1)).expect("subresultant division is exact")
        };
    }
}

/// `lc(b)^(deg a - deg b + 1) * a mod b` in variable `x`.
fn full_pseudo_remainder(a: &MPoly, b: &MPoly, x: usize) -> MPoly {
    let db = b.degree_in(x);
    let lb = b.lc_in(x);
    let mut e = a.degree_in(x) + 1 - db;
    let mut r = a.clone();
    let n = a.vars().len();
    while !r.is_zero() && r.degree_in(x) >= db && (db > 0 || r.uses_var(x) || e > 0) {
        if db == 0 && !r.uses_var(x) {
            break;
        }
        let dr = r.degree_in(x);
        let lr = r.lc_in(x);
        let mut m = vec![0; n];
        m[x] = dr - db;
        let shifted = (&lr * b).mul_monomial(&Mono(m), &ExactScalar::from_integer(1.into()));
        r = &(&lb * &r) - &shifted;
        e -= 1;
    }
    if db == 0 {
        return MPoly::zero(a.vars());
    }
    &r * &lb.pow(e)
}

/// Cheap sufficient test for `gcd(a, b)` having degree zero in `x`: specialize
/// the other variables at small integers keeping the leading coefficient of
/// `a` nonzero and run the univariate Euclidean algorithm.
fn coprime_in(a: &MPoly, b: &MPoly, x: usize) -> bool {
    let n = a.vars().len();
    let lca = a.lc_in(x);
    for attempt in 0..3i64 {
        let point: Vec<Option<ExactScalar>> = (0..n)
            .map(|i| if i == x { None } else { Some(ExactScalar::from_integer((3 + 7 * attempt + 5 * i as i64 * (attempt + 1)).into())) })
            .collect();
        let full: Vec<ExactScalar> = point.iter().map(|p| p.clone().unwrap_or_default()).collect();
        if lca.eval(&full) == ExactScalar::default() {
            continue;
        }
        let ua = univariate(a, x, &point);
        let ub = univariate(b, x, &point);
        return univariate_gcd_degree(ua, ub) == 0;
    }
    false
}

fn univariate(p: &MPoly, x: usize, point: &[Option<ExactScalar>]) -> Vec<ExactScalar> {
    let q = p.eval_partial(point);
    let mut c = vec![ExactScalar::default(); q.degree_in(x) as usize + 1];
    for (m, k) in q.terms() {
        c[m.0[x] as usize] += k;
    }
    while c.len() > 1 && c.last().is_some_and(|v| *v == ExactScalar::default()) {
        c.pop();
    }
    c
}

fn univariate_gcd_degree(mut a: Vec<ExactScalar>, mut b: Vec<ExactScalar>) -> usize {
    let zero = ExactScalar::default();
    let is_zero = |p: &Vec<ExactScalar>| p.iter().all(|c| *c == zero);
    if is_zero(&a) {
        return b.len().saturating_sub(1);
    }
    while !is_zero(&b) {
        // a mod b
        while a.len() >= b.len() && !is_zero(&a) {
            let shift = a.len() - b.len();
            let f = a.last().unwrap() / b.last().unwrap();
            for (i, c) in b.iter().enumerate() {
                a[i + shift] -= &f * c;
            }
            a.pop();
            while a.len() > 1 && a.last() == Some(&zero) {
                a.pop();
            }
        }
        if a.len() < b.len() && is_zero(&a) {
            a = vec![zero.clone()];
        }
        std::mem::swap(&mut a, &mut b);
        if is_zero(&b) {
            break;
        }
    }
    a.len().saturating_sub(1)
}

fn divides_either(a: &MPoly, b: &MPoly) -> Option<MPoly> {
    let (small, large) = if a.nterms() <= b.nterms() { (a, b) } else { (b, a) };
    if small.total_degree() <= large.total_degree() && large.div_exact(small).is_some() {
        return Some(small.monic());
    }
    None
}

fn monomial_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    let n = a.vars().len();
    let mut e = vec![u32::MAX; n];
    for (m, _) in a.terms().iter().chain(b.terms()) {
        for (k, x) in m.0.iter().enumerate() {
            e[k] = e[k].min(*x);
        }
    }
    MPoly::monomial(a.vars(), e, ExactScalar::from_integer(1.into()))
}

/// GCD of the coefficients of `p` viewed as a polynomial in `x`.
pub fn content_in(p: &MPoly, x: usize) -> MPoly {
    let mut g = MPoly::zero(p.vars());
    for c in p.coeffs_in(x).iter().rev() {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_constant() {
            return MPoly::one(p.vars());
        }
    }
    g
}

/// Primitive part with respect to `x`, scaled to be integer-primitive.
pub fn primitive_in(p: &MPoly, x: usize) -> MPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, x);
    p.div_exact(&c).expect("content divides").primitive_integer()
}

