use std::fmt;
use std::sync::Arc;

use exact_field::{MPoly, VarTable};
use serde_json::{json, Value};

use crate::{FixedPoint, FixedPointError, Result};

/// A spin: either a concrete positive integer or a symbol `l_j` assumed
/// larger than every grade under consideration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Value(u32),
    Symbolic,
}

/// The spins `(l_1, .., l_w)` of the framing vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinProfile {
    spins: Vec<Spin>,
}

impl SpinProfile {
    pub fn new(ell: &[u32]) -> Result<Self> {
        if ell.is_empty() {
            return Err(FixedPointError::Profile("at least one framing vertex is required".into()));
        }
        if ell.contains(&0) {
            return Err(FixedPointError::Profile(format!("spins must be positive, got {ell:?}")));
        }
        Ok(SpinProfile { spins: ell.iter().map(|&l| Spin::Value(l)).collect() })
    }

    /// All spins symbolic.
    pub fn symbolic(w: usize) -> Self {
        SpinProfile { spins: vec![Spin::Symbolic; w] }
    }

    pub fn from_spins(spins: Vec<Spin>) -> Result<Self> {
        if spins.is_empty() || spins.contains(&Spin::Value(0)) {
            return Err(FixedPointError::Profile("spins must be positive and nonempty".into()));
        }
        Ok(SpinProfile { spins })
    }

    /// Parses `1,2,3`; the letter `l` stands for a symbolic spin.
    pub fn parse(text: &str) -> Result<Self> {
        let spins = text
            .split(',')
            .map(|s| match s.trim() {
                "l" => Ok(Spin::Symbolic),
                t => t
                    .parse::<u32>()
                    .map(Spin::Value)
                    .map_err(|_| FixedPointError::Profile(format!("bad spin `{t}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_spins(spins)
    }

    pub fn w(&self) -> usize {
        self.spins.len()
    }

    pub fn spins(&self) -> &[Spin] {
        &self.spins
    }

    pub fn spin(&self, j: usize) -> Spin {
        self.spins[j]
    }

    pub fn is_symbolic(&self) -> bool {
        self.spins.contains(&Spin::Symbolic)
    }

    /// Concrete spin values; `None` if any spin is symbolic.
    pub fn values(&self) -> Option<Vec<u32>> {
        self.spins
            .iter()
            .map(|s| match s {
                Spin::Value(l) => Some(*l),
                Spin::Symbolic => None,
            })
            .collect()
    }

    /// Enumeration bound for column `j` at grade `v`.
    pub fn bound(&self, j: usize, v: u32) -> u32 {
        match self.spins[j] {
            Spin::Value(l) => l,
            Spin::Symbolic => v,
        }
    }

    pub fn can_raise(&self, j: usize, vj: u32) -> bool {
        match self.spins[j] {
            Spin::Value(l) => vj < l,
            Spin::Symbolic => true,
        }
    }

    pub fn contains(&self, p: &FixedPoint) -> bool {
        p.w() == self.w()
            && p.0.iter().zip(&self.spins).all(|(v, s)| match s {
                Spin::Value(l) => v <= l,
                Spin::Symbolic => true,
            })
    }

    /// Sum of the spins as a polynomial.
    pub fn total_spin(&self, vars: &Arc<VarTable>) -> Result<MPoly> {
        let mut acc = MPoly::zero(vars);
        for j in 0..self.w() {
            acc = &acc + &self.ell_poly(j, vars)?;
        }
        Ok(acc)
    }

    /// Spin `l_j` as a polynomial: a constant or the variable `l_{j+1}`.
    pub fn ell_poly(&self, j: usize, vars: &Arc<VarTable>) -> Result<MPoly> {
        Ok(match self.spins[j] {
            Spin::Value(l) => MPoly::from_int(vars, l as i64),
            Spin::Symbolic => MPoly::var_named(vars, &format!("l_{}", j + 1))?,
        })
    }

    /// Standard variable table for this profile with `v` Chern roots and the
    /// given extra variables.
    pub fn var_table(&self, v: usize, extra: &[&str]) -> Arc<VarTable> {
        VarTable::standard(self.w(), v, self.is_symbolic(), extra)
    }

    /// Profile with columns reordered as `(l_{s^-1(1)}, ..)`.
    pub fn permuted(&self, sigma: &crate::Permutation) -> SpinProfile {
        SpinProfile { spins: sigma.reorder(&self.spins) }
    }

    pub fn to_json(&self) -> Value {
        let ell: Vec<Value> = self
            .spins
            .iter()
            .map(|s| match s {
                Spin::Value(l) => json!(l),
                Spin::Symbolic => json!("l"),
            })
            .collect();
        json!({ "w": self.w(), "ell": ell })
    }
}

impl fmt::Display for SpinProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .spins
            .iter()
            .enumerate()
            .map(|(j, s)| match s {
                Spin::Value(l) => l.to_string(),
                Spin::Symbolic => format!("l_{}", j + 1),
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}
