use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{FieldError, Result};
use crate::scalar::{format_scalar, ExactScalar};
use crate::vars::{same_table, VarTable};

/// Exponent vector ordered graded-lexicographically, the last variable of the
/// table being the most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(n: usize) -> Self {
        Mono(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept sorted in strictly decreasing monomial order with no zero
/// coefficients, so structural equality is mathematical equality.
#[derive(Debug, Clone)]
pub struct MPoly {
    vars: Arc<VarTable>,
    terms: Vec<(Mono, ExactScalar)>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for MPoly {}

impl std::hash::Hash for MPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl MPoly {
    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(vars: &Arc<VarTable>, terms: impl IntoIterator<Item = (Vec<u32>, ExactScalar)>) -> Self {
        let mut acc: BTreeMap<Mono, ExactScalar> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length does not match variable table");
            if c.is_zero() {
                continue;
            }
            *acc.entry(Mono(e)).or_insert_with(ExactScalar::zero) += c;
        }
        Self::from_map(vars.clone(), acc)
    }

    fn from_map(vars: Arc<VarTable>, acc: BTreeMap<Mono, ExactScalar>) -> Self {
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        MPoly { vars, terms }
    }

    pub fn zero(vars: &Arc<VarTable>) -> Self {
        MPoly { vars: vars.clone(), terms: Vec::new() }
    }

    pub fn one(vars: &Arc<VarTable>) -> Self {
        Self::constant(vars, ExactScalar::one())
    }

    pub fn constant(vars: &Arc<VarTable>, c: ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero(vars);
        }
        MPoly { vars: vars.clone(), terms: vec![(Mono::one(vars.len()), c)] }
    }

    pub fn from_int(vars: &Arc<VarTable>, n: i64) -> Self {
        Self::constant(vars, crate::scalar::int(n))
    }

    pub fn var(vars: &Arc<VarTable>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        MPoly { vars: vars.clone(), terms: vec![(Mono(e), ExactScalar::one())] }
    }

    pub fn var_named(vars: &Arc<VarTable>, name: &str) -> Result<Self> {
        Ok(Self::var(vars, vars.require(name)?))
    }

    pub fn monomial(vars: &Arc<VarTable>, exp: Vec<u32>, c: ExactScalar) -> Self {
        Self::from_terms(vars, [(exp, c)])
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn terms(&self) -> &[(Mono, ExactScalar)] {
        &self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.degree() == 0 && self.terms[0].1.is_one()
    }

    /// The value if the polynomial is constant (zero included).
    pub fn as_constant(&self) -> Option<ExactScalar> {
        match self.terms.len() {
            0 => Some(ExactScalar::zero()),
            1 if self.terms[0].0.degree() == 0 => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// Largest exponent of variable `i`; 0 for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[i]).max().unwrap_or(0)
    }

    /// Maximum of `sum_i weights[i] * e_i` over the terms, `None` for zero.
    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u32> {
        self.terms
            .iter()
            .map(|(m, _)| m.0.iter().zip(weights).map(|(e, w)| e * w).sum())
            .max()
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[i] > 0)
    }

    /// Most significant variable occurring in the polynomial.
    pub fn highest_var(&self) -> Option<usize> {
        (0..self.vars.len()).rev().find(|&i| self.uses_var(i))
    }

    pub fn leading_coefficient(&self) -> Option<&ExactScalar> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn leading_monomial(&self) -> Option<&Mono> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Divides by the leading coefficient; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            Some(c) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// Normalizes so the leading coefficient is positive.
    pub fn sign_normalized(&self) -> Self {
        match self.leading_coefficient() {
            Some(c) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    fn check(&self, other: &MPoly) {
        assert!(
            same_table(&self.vars, &other.vars),
            "variable context mismatch: {} vs {}",
            self.vars,
            other.vars
        );
    }

    pub fn try_add(&self, other: &MPoly) -> Result<MPoly> {
        if !same_table(&self.vars, &other.vars) {
            return Err(FieldError::ContextMismatch(format!("{} vs {}", self.vars, other.vars)));
        }
        Ok(self + other)
    }

    fn add_impl(&self, other: &MPoly, negate: bool) -> MPoly {
        self.check(other);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MPoly { vars: self.vars.clone(), terms: out }
    }

    fn mul_impl(&self, other: &MPoly) -> MPoly {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.vars);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut acc: BTreeMap<Mono, ExactScalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(slot) => *slot += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(self.vars.clone(), acc)
    }

    pub fn mul_monomial(&self, exp: &Mono, c: &ExactScalar) -> MPoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.mul(exp), k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        self.check(d);
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = d.terms[0].clone();
        let lc_inv = lc.recip();
        let mut rem: BTreeMap<Mono, ExactScalar> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Mono, ExactScalar)> = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            if !lm.divides(&m) {
                return None;
            }
            let qm = m.div(&lm);
            let qc = &c * &lc_inv;
            for (dm, dc) in &d.terms[1..] {
                let t = dm.mul(&qm);
                let k = dc * &qc;
                match rem.entry(t) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= k;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-k);
                    }
                }
            }
            quot.push((qm, qc));
        }
        // Quotient terms are produced in decreasing order.
        Some(MPoly { vars: self.vars.clone(), terms: quot })
    }

    /// Coefficients with respect to variable `i`; entry `k` multiplies `x_i^k`.
    pub fn coeffs_in(&self, i: usize) -> Vec<MPoly> {
        let deg = self.degree_in(i) as usize;
        let mut buckets: Vec<Vec<(Vec<u32>, ExactScalar)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[i] as usize;
            e[i] = 0;
            buckets[k].push((e, c.clone()));
        }
        buckets.into_iter().map(|t| MPoly::from_terms(&self.vars, t)).collect()
    }

    pub fn from_coeffs_in(vars: &Arc<VarTable>, i: usize, coeffs: &[MPoly]) -> MPoly {
        let mut acc = MPoly::zero(vars);
        let mut e = vec![0; vars.len()];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            e[i] = k as u32;
            acc = &acc + &c.mul_monomial(&Mono(e.clone()), &ExactScalar::one());
        }
        acc
    }

    /// Leading coefficient with respect to variable `i`.
    pub fn lc_in(&self, i: usize) -> MPoly {
        self.coeffs_in(i).pop().unwrap_or_else(|| MPoly::zero(&self.vars))
    }

    pub fn derivative(&self, i: usize) -> MPoly {
        let terms = self.terms.iter().filter(|(m, _)| m.0[i] > 0).map(|(m, c)| {
            let mut e = m.0.clone();
            let k = e[i];
            e[i] -= 1;
            (e, c * crate::scalar::int(k as i64))
        });
        MPoly::from_terms(&self.vars, terms)
    }

    /// Simultaneous substitution `x_i -> value` for each binding. Values must
    /// live in the same variable table.
    pub fn substitute(&self, bindings: &[(usize, MPoly)]) -> MPoly {
        if bindings.is_empty() || self.is_zero() {
            return self.clone();
        }
        for (_, p) in bindings {
            self.check(p);
        }
        let mut powers: Vec<Vec<MPoly>> = bindings.iter().map(|(_, p)| vec![MPoly::one(&self.vars), p.clone()]).collect();
        // Group terms by the exponents of the bound variables so each product of
        // powers is formed once.
        let mut groups: BTreeMap<Vec<u32>, Vec<(Mono, ExactScalar)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = m.0.clone();
            let key: Vec<u32> = bindings
                .iter()
                .map(|(i, _)| {
                    let k = rest[*i];
                    rest[*i] = 0;
                    k
                })
                .collect();
            groups.entry(key).or_default().push((Mono(rest), c.clone()));
        }
        let mut total = MPoly::zero(&self.vars);
        for (key, rest_terms) in groups {
            let mut factor = MPoly::one(&self.vars);
            for (b, &k) in key.iter().enumerate() {
                let k = k as usize;
                if k == 0 {
                    continue;
                }
                while powers[b].len() <= k {
                    let next = &powers[b][powers[b].len() - 1] * &powers[b][1];
                    powers[b].push(next);
                }
                factor = &factor * &powers[b][k];
            }
            let rest = MPoly::from_terms(&self.vars, rest_terms.into_iter().map(|(m, c)| (m.0, c)));
            total = &total + &(&rest * &factor);
        }
        total
    }

    /// Substitutes exact constants for some variables (`None` leaves a variable free).
    pub fn eval_partial(&self, values: &[Option<ExactScalar>]) -> MPoly {
        let mut acc: BTreeMap<Mono, ExactScalar> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let mut k = c.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    if e[i] > 0 {
                        k *= num_traits::pow(v.clone(), e[i] as usize);
                        e[i] = 0;
                    }
                }
            }
            *acc.entry(Mono(e)).or_insert_with(ExactScalar::zero) += k;
        }
        Self::from_map(self.vars.clone(), acc)
    }

    /// Full evaluation at a point.
    pub fn eval(&self, point: &[ExactScalar]) -> ExactScalar {
        let mut total = ExactScalar::zero();
        for (m, c) in &self.terms {
            let mut k = c.clone();
            for (e, v) in m.0.iter().zip(point) {
                if *e > 0 {
                    k *= num_traits::pow(v.clone(), *e as usize);
                }
            }
            total += k;
        }
        total
    }

    /// Renames variables: variable `i` becomes variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> MPoly {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; m.0.len()];
            for (i, k) in m.0.iter().enumerate() {
                e[perm[i]] += k;
            }
            (e, c.clone())
        });
        MPoly::from_terms(&self.vars, terms)
    }

    /// Re-expresses the polynomial in another table, matching variables by name.
    pub fn to_table(&self, target: &Arc<VarTable>) -> Result<MPoly> {
        if same_table(&self.vars, target) {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names().iter().enumerate() {
            match target.index(name) {
                Some(j) => map.push(Some(j)),
                None if self.uses_var(i) => {
                    return Err(FieldError::ContextMismatch(format!(
                        "variable `{name}` is absent from {target}"
                    )))
                }
                None => map.push(None),
            }
        }
        let terms = self.terms.iter().map(|(m, c)| {
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

    /// Greatest common divisor of the numerators divided by the least common
    /// multiple of the denominators, with the sign of the leading coefficient.
    pub fn rational_content(&self) -> ExactScalar {
        use num_integer::Integer;
        let mut g = num_bigint::BigInt::zero();
        let mut l = num_bigint::BigInt::one();
        for (_, c) in &self.terms {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if g.is_zero() {
            return ExactScalar::one();
        }
        let mut c = ExactScalar::new(g, l);
        if self.leading_coefficient().is_some_and(|c| c.is_negative()) {
            c = -c;
        }
        c
    }

    /// Integer-primitive form with positive leading coefficient.
    pub fn primitive_integer(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.rational_content().recip())
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.add_impl(rhs, false)
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.add_impl(rhs, true)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.mul_impl(rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: &MPoly) -> MPoly {
                (&self).$f(rhs)
            }
        }
        impl $tr<MPoly> for &MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl fmt::Display for MPoly {
    /// Canonical text form: terms in decreasing monomial order, explicit
    /// exponents, `*` between factors, e.g. `z_1^2 - 3/2*hbar*z_2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.degree() == 0 {
                factors.push(format_scalar(&abs));
            }
            for (i, e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.vars.name(i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
