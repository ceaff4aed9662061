use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{FieldError, Result};
use crate::gcd::gcd;
use crate::poly::MPoly;
use crate::scalar::ExactScalar;
use crate::vars::VarTable;

/// Reduced fraction of polynomials. The denominator is monic in the monomial
/// order and coprime to the numerator; zero is `0/1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RFunc {
    num: MPoly,
    den: MPoly,
}

impl RFunc {
    /// Reduces `num/den` by their GCD and normalizes the denominator.
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero(num.vars()));
        }
        if let Some(c) = den.as_constant() {
            return Ok(RFunc { num: num.scale(&c.recip()), den: MPoly::one(num.vars()) });
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        Ok(Self::from_coprime(num, den))
    }

    /// Builds a fraction the caller knows to be in lowest terms; only the
    /// denominator normalization is applied.
    pub fn from_coprime(num: MPoly, den: MPoly) -> Self {
        let lc = den.leading_coefficient().expect("nonzero denominator").clone();
        if lc.is_one() {
            RFunc { num, den }
        } else {
            let inv = lc.recip();
            RFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    /// Product of linear-type factors `scalar * prod(num) / prod(den)`.
    ///
    /// Each factor should be irreducible in the sense that it has degree one in
    /// some variable with a constant coefficient there; identical factors are
    /// cancelled and the remaining fraction is then coprime without a GCD.
    /// Factors that fail the irreducibility test fall back to a full reduction.
    pub fn from_factors(vars: &Arc<VarTable>, scalar: ExactScalar, num: &[MPoly], den: &[MPoly]) -> Result<Self> {
        if scalar.is_zero() || num.iter().any(|p| p.is_zero()) {
            return Ok(Self::zero(vars));
        }
        let mut c = scalar;
        let mut nf: Vec<MPoly> = Vec::new();
        let mut all_irreducible = true;
        for p in num {
            if let Some(k) = p.as_constant() {
                c *= k;
                continue;
            }
            all_irreducible &= is_linear_irreducible(p);
            let lc = p.leading_coefficient().unwrap().clone();
            c *= &lc;
            nf.push(p.scale(&lc.recip()));
        }
        let mut df: Vec<MPoly> = Vec::new();
        for p in den {
            if p.is_zero() {
                return Err(FieldError::DivisionByZero);
            }
            if let Some(k) = p.as_constant() {
                c /= k;
                continue;
            }
            all_irreducible &= is_linear_irreducible(p);
            let lc = p.leading_coefficient().unwrap().clone();
            c /= &lc;
            let m = p.scale(&lc.recip());
            if let Some(pos) = nf.iter().position(|q| *q == m) {
                nf.swap_remove(pos);
            } else {
                df.push(m);
            }
        }
        let mut n = MPoly::constant(vars, c);
        for p in &nf {
            n = &n * p;
        }
        let mut d = MPoly::one(vars);
        for p in &df {
            d = &d * p;
        }
        if all_irreducible {
            Ok(Self::from_coprime(n, d))
        } else {
            Self::new(n, d)
        }
    }

    pub fn zero(vars: &Arc<VarTable>) -> Self {
        RFunc { num: MPoly::zero(vars), den: MPoly::one(vars) }
    }

    pub fn one(vars: &Arc<VarTable>) -> Self {
        RFunc { num: MPoly::one(vars), den: MPoly::one(vars) }
    }

    pub fn constant(vars: &Arc<VarTable>, c: ExactScalar) -> Self {
        RFunc { num: MPoly::constant(vars, c), den: MPoly::one(vars) }
    }

    pub fn from_int(vars: &Arc<VarTable>, n: i64) -> Self {
        Self::constant(vars, crate::scalar::int(n))
    }

    pub fn var(vars: &Arc<VarTable>, i: usize) -> Self {
        Self::from_poly(MPoly::var(vars, i))
    }

    pub fn from_poly(p: MPoly) -> Self {
        let den = MPoly::one(p.vars());
        RFunc { num: p, den }
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        self.num.vars()
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn into_parts(self) -> (MPoly, MPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The numerator when the value is a polynomial.
    pub fn as_poly(&self) -> Option<&MPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<ExactScalar> {
        if self.is_polynomial() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.num.uses_var(i) || self.den.uses_var(i)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars());
        }
        RFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &RFunc) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, n: u32) -> Self {
        RFunc { num: self.num.pow(n), den: self.den.pow(n) }
    }

    /// Equality by cross multiplication, valid for unreduced representatives too.
    pub fn eq_cross(&self, other: &RFunc) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    fn add_impl(&self, other: &RFunc, negate: bool) -> RFunc {
        let b = if negate { -&other.num } else { other.num.clone() };
        if self.den == other.den {
            let n = &self.num + &b;
            if self.den.is_one() {
                return RFunc { num: n, den: self.den.clone() };
            }
            return RFunc::new(n, self.den.clone()).expect("nonzero denominator");
        }
        if self.is_zero() {
            return RFunc { num: b, den: other.den.clone() };
        }
        if other.is_zero() {
            return self.clone();
        }
        let g = gcd(&self.den, &other.den);
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = other.den.div_exact(&g).expect("gcd divides");
        let n = &(&self.num * &d2) + &(&b * &d1);
        let d = &self.den * &d2;
        if g.is_one() {
            // A common factor of n and d would have to divide one of the
            // coprime denominators and then also its numerator.
            if n.is_zero() {
                return RFunc::zero(self.vars());
            }
            return RFunc::from_coprime(n, d);
        }
        RFunc::new(n, d).expect("nonzero denominator")
    }

    fn mul_impl(&self, other: &RFunc) -> RFunc {
        if self.is_zero() || other.is_zero() {
            return RFunc::zero(self.vars());
        }
        if self.den.is_one() && other.den.is_one() {
            return RFunc::from_poly(&self.num * &other.num);
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = other.den.div_exact(&g1).unwrap();
        let n2 = other.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        RFunc::from_coprime(&n1 * &n2, &d1 * &d2)
    }

    /// Simultaneous substitution of rational functions for variables.
    pub fn substitute(&self, bindings: &[(usize, RFunc)]) -> Result<RFunc> {
        let n = substitute_poly_rf(&self.num, bindings)?;
        let d = substitute_poly_rf(&self.den, bindings)?;
        n.checked_div(&d)
    }

    /// Substitution by variable name. Binding values are converted into this
    /// function's table; a value using a variable absent from it is an error.
    pub fn substitute_named(&self, bindings: &[(&str, RFunc)]) -> Result<RFunc> {
        let target = self.vars().clone();
        let mut resolved = Vec::with_capacity(bindings.len());
        for (name, value) in bindings {
            resolved.push((target.require(name)?, value.to_table(&target)?));
        }
        self.substitute(&resolved)
    }

    /// Full evaluation at a point; fails on a vanishing denominator.
    pub fn eval(&self, point: &[ExactScalar]) -> Result<ExactScalar> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Partial evaluation at exact constants.
    pub fn eval_partial(&self, values: &[Option<ExactScalar>]) -> Result<RFunc> {
        RFunc::new(self.num.eval_partial(values), self.den.eval_partial(values))
    }

    pub fn to_table(&self, target: &Arc<VarTable>) -> Result<RFunc> {
        Ok(RFunc::from_coprime(self.num.to_table(target)?, self.den.to_table(target)?))
    }

    pub fn permute_vars(&self, perm: &[usize]) -> RFunc {
        RFunc::new(self.num.permute_vars(perm), self.den.permute_vars(perm)).expect("nonzero denominator")
    }
}

/// Substitutes rational functions into a polynomial using one common
/// denominator per binding.
fn substitute_poly_rf(p: &MPoly, bindings: &[(usize, RFunc)]) -> Result<RFunc> {
    if bindings.iter().all(|(_, r)| r.is_polynomial()) {
        let polys: Vec<(usize, MPoly)> = bindings.iter().map(|(i, r)| (*i, r.num.clone())).collect();
        return Ok(RFunc::from_poly(p.substitute(&polys)));
    }
    // Homogenize each bound variable: x_i = a_i / b_i, multiply through by b_i^{deg}.
    let vars = p.vars().clone();
    let mut den = MPoly::one(&vars);
    let mut num_acc = MPoly::zero(&vars);
    let degs: Vec<u32> = bindings.iter().map(|(i, _)| p.degree_in(*i)).collect();
    for (b, (_, r)) in bindings.iter().enumerate() {
        den = &den * &r.den.pow(degs[b]);
    }
    for (m, c) in p.terms() {
        let mut term = MPoly::constant(&vars, c.clone());
        let mut rest = m.0.clone();
        for (b, (i, r)) in bindings.iter().enumerate() {
            let k = rest[*i];
            rest[*i] = 0;
            if k > 0 {
                term = &term * &r.num.pow(k);
            }
            if degs[b] > k {
                term = &term * &r.den.pow(degs[b] - k);
            }
        }
        let mono = MPoly::monomial(&vars, rest, ExactScalar::one());
        num_acc = &num_acc + &(&term * &mono);
    }
    RFunc::new(num_acc, den)
}

/// A polynomial of degree one in some variable whose coefficient there is a
/// nonzero constant, hence irreducible up to units.
fn is_linear_irreducible(p: &MPoly) -> bool {
    (0..p.vars().len()).any(|i| p.degree_in(i) == 1 && p.lc_in(i).is_constant())
}

impl Add for &RFunc {
    type Output = RFunc;
    fn add(self, rhs: &RFunc) -> RFunc {
        self.add_impl(rhs, false)
    }
}

impl Sub for &RFunc {
    type Output = RFunc;
    fn sub(self, rhs: &RFunc) -> RFunc {
        self.add_impl(rhs, true)
    }
}

impl Mul for &RFunc {
    type Output = RFunc;
    fn mul(self, rhs: &RFunc) -> RFunc {
        self.mul_impl(rhs)
    }
}

impl Div for &RFunc {
    type Output = RFunc;
    fn div(self, rhs: &RFunc) -> RFunc {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RFunc {
    type Output = RFunc;
    fn neg(self) -> RFunc {
        RFunc { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RFunc {
            type Output = RFunc;
            fn $f(self, rhs: RFunc) -> RFunc {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&RFunc> for RFunc {
            type Output = RFunc;
            fn $f(self, rhs: &RFunc) -> RFunc {
                (&self).$f(rhs)
            }
        }
        impl $tr<RFunc> for &RFunc {
            type Output = RFunc;
            fn $f(self, rhs: RFunc) -> RFunc {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RFunc {
    type Output = RFunc;
    fn neg(self) -> RFunc {
        -&self
    }
}

impl From<MPoly> for RFunc {
    fn from(p: MPoly) -> Self {
        RFunc::from_poly(p)
    }
}

impl fmt::Display for RFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let wrap = |p: &MPoly| {
                if p.nterms() > 1 {
                    format!("({p})")
                } else {
                    p.to_string()
                }
            };
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}
