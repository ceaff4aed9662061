//! Fixed points `S(l_1..l_w; v)` of the framed spin quiver, their Chern roots,
//! addible and removable boxes, and the chamber orders attached to
//! permutations of the framing vertices.

mod perm;
mod profile;

pub use perm::Permutation;
pub use profile::{Spin, SpinProfile};

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use exact_field::{MPoly, VarTable};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixedPointError {
    #[error("fixed point {point} is out of bounds for spins {profile}")]
    OutOfBounds { point: String, profile: String },
    #[error("length mismatch: {0}")]
    Length(String),
    #[error("invalid permutation: {0}")]
    Permutation(String),
    #[error("invalid spin profile: {0}")]
    Profile(String),
    #[error(transparent)]
    Field(#[from] exact_field::FieldError),
}

pub type Result<T> = std::result::Result<T, FixedPointError>;

/// A fixed point `(v_1, .., v_w)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FixedPoint(pub Vec<u32>);

impl FixedPoint {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn w(&self) -> usize {
        self.0.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.0)
    }

    /// `self + e_j`.
    pub fn raised(&self, j: usize) -> FixedPoint {
        let mut p = self.0.clone();
        p[j] += 1;
        FixedPoint(p)
    }

    /// `self - e_j`; `None` if the coordinate is already zero.
    pub fn lowered(&self, j: usize) -> Option<FixedPoint> {
        let mut p = self.0.clone();
        p[j] = p[j].checked_sub(1)?;
        Some(FixedPoint(p))
    }
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl From<Vec<u32>> for FixedPoint {
    fn from(v: Vec<u32>) -> Self {
        FixedPoint(v)
    }
}

/// A box of a fixed point: column `j` (0-based), height index `k` (0-based)
/// and its weight `z_j - (l_j - 2k) hbar`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxWeight {
    pub column: usize,
    pub index: u32,
    pub weight: MPoly,
}

/// All fixed points of total `v`, lexicographically descending.
pub fn enumerate_fixed_points(profile: &SpinProfile, v: u32) -> Vec<FixedPoint> {
    fn rec(profile: &SpinProfile, v: u32, j: usize, prefix: &mut Vec<u32>, out: &mut Vec<FixedPoint>) {
        let w = profile.w();
        if j == w {
            if v == 0 {
                out.push(FixedPoint(prefix.clone()));
            }
            return;
        }
        let rest: u32 = (j + 1..w).map(|k| profile.bound(k, v)).sum();
        let top = profile.bound(j, v).min(v);
        for x in (0..=top).rev() {
            if v - x > rest {
                break;
            }
            prefix.push(x);
            rec(profile, v - x, j + 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(profile, v, 0, &mut Vec::new(), &mut out);
    out
}

/// Grades `0..=max` that contain at least one fixed point.
pub fn max_grade(profile: &SpinProfile, cap: u32) -> u32 {
    (0..=cap).rev().find(|&v| !enumerate_fixed_points(profile, v).is_empty()).unwrap_or(0)
}

fn check_point(lambda: &FixedPoint, profile: &SpinProfile) -> Result<()> {
    if lambda.w() != profile.w() {
        return Err(FixedPointError::Length(format!("{lambda} has {} parts, profile has {}", lambda.w(), profile.w())));
    }
    if !profile.contains(lambda) {
        return Err(FixedPointError::OutOfBounds { point: lambda.to_string(), profile: profile.to_string() });
    }
    Ok(())
}

/// Weight `z_j - (l_j - 2k) hbar` of the box at height `k` in column `j`.
pub fn box_weight(profile: &SpinProfile, vars: &Arc<VarTable>, j: usize, k: u32) -> Result<MPoly> {
    let z = MPoly::var_named(vars, &format!("z_{}", j + 1))?;
    let hbar = MPoly::var_named(vars, "hbar")?;
    let shift = &profile.ell_poly(j, vars)? - &MPoly::from_int(vars, 2 * k as i64);
    Ok(&z - &(&shift * &hbar))
}

/// Equivariant Chern roots at `lambda`, column-major.
pub fn chern_roots(lambda: &FixedPoint, profile: &SpinProfile, vars: &Arc<VarTable>) -> Result<Vec<MPoly>> {
    check_point(lambda, profile)?;
    let mut out = Vec::with_capacity(lambda.total() as usize);
    for (j, &vj) in lambda.0.iter().enumerate() {
        for k in 0..vj {
            out.push(box_weight(profile, vars, j, k)?);
        }
    }
    Ok(out)
}

/// Boxes that can be added to `lambda` without leaving the fixed-point set.
pub fn addible_boxes(lambda: &FixedPoint, profile: &SpinProfile, vars: &Arc<VarTable>) -> Result<Vec<BoxWeight>> {
    check_point(lambda, profile)?;
    let mut out = Vec::new();
    for (j, &vj) in lambda.0.iter().enumerate() {
        if profile.can_raise(j, vj) {
            out.push(BoxWeight { column: j, index: vj, weight: box_weight(profile, vars, j, vj)? });
        }
    }
    Ok(out)
}

/// Boxes whose removal keeps `lambda` a fixed point.
pub fn removable_boxes(lambda: &FixedPoint, profile: &SpinProfile, vars: &Arc<VarTable>) -> Result<Vec<BoxWeight>> {
    check_point(lambda, profile)?;
    let mut out = Vec::new();
    for (j, &vj) in lambda.0.iter().enumerate() {
        if vj > 0 {
            out.push(BoxWeight { column: j, index: vj - 1, weight: box_weight(profile, vars, j, vj - 1)? });
        }
    }
    Ok(out)
}

/// Chamber order: compares `(lambda_{s^-1(1)}, .., lambda_{s^-1(w)})`
/// lexicographically; the identity gives the plain lexicographic order.
pub fn sigma_compare(lambda: &FixedPoint, mu: &FixedPoint, sigma: &Permutation) -> Result<Ordering> {
    if lambda.w() != sigma.len() || mu.w() != sigma.len() {
        return Err(FixedPointError::Length("point and permutation sizes differ".into()));
    }
    Ok(sigma.reorder(&lambda.0).cmp(&sigma.reorder(&mu.0)))
}
