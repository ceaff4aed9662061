//! R-matrices `R_{s',s} = [W^{s'}|]^{-1} [W^s|]` between chamber bases, the
//! closed forms for two framing vertices, and consistency checks.

mod closed;
mod latex;
mod verify;

pub use closed::{a_closed_form, a_inverse_closed_form, r_closed_form_w2};
pub use latex::{matrix_to_latex, rfunc_to_latex};
pub use verify::{
    braid_consistency_check, cocycle_check, denominator_scan, linear_factors, translation_invariance_check,
};

use std::cmp::Ordering;
use std::sync::Arc;

use serde_json::{json, Value};

use exact_field::{json::opmatrix_to_json, FieldError, Matrix, OpMatrix, VarTable};
use quiver_fixedpoints::{enumerate_fixed_points, sigma_compare, FixedPointError, Permutation, SpinProfile};
use shuffle_weights::{restriction_matrix, specialize_w2, w2_table, WeightError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RMatrixError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    FixedPoint(#[from] FixedPointError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub type Result<T> = std::result::Result<T, RMatrixError>;

/// `R_{s',s}` at grade `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct RMatrixResult {
    pub profile: SpinProfile,
    pub v: u32,
    pub sigma_prime: Permutation,
    pub sigma: Permutation,
    pub matrix: OpMatrix,
}

impl RMatrixResult {
    /// For two framing vertices: the matrix in `z = z_1 - z_2`.
    pub fn specialized_w2(&self) -> Result<OpMatrix> {
        if self.profile.w() != 2 {
            return Err(RMatrixError::Domain("specialization needs w = 2".into()));
        }
        let table = w2_table(&self.profile);
        let (n, c) = (self.matrix.matrix.nrows(), self.matrix.matrix.ncols());
        let mut m2 = Matrix::zeros(&table, n, c);
        for i in 0..n {
            for j in 0..c {
                m2.set(i, j, specialize_w2(self.matrix.matrix.get(i, j), &table)?);
            }
        }
        Ok(OpMatrix::new(self.matrix.rows.clone(), self.matrix.cols.clone(), m2)?)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "profile": self.profile.to_json(),
            "v": self.v,
            "sigma_prime": self.sigma_prime.label(),
            "sigma": self.sigma.label(),
            "matrix": opmatrix_to_json(&self.matrix),
        })
    }
}

/// Inverse of a restriction matrix. Reordering rows and columns by the
/// chamber order makes the matrix lower-triangular before inversion.
pub fn chamber_inverse(m: &OpMatrix, sigma: &Permutation) -> Result<OpMatrix> {
    let labels: Vec<quiver_fixedpoints::FixedPoint> =
        m.rows.iter().map(|r| quiver_fixedpoints::FixedPoint(r.clone())).collect();
    let mut order: Vec<usize> = (0..labels.len()).collect();
    let mut err = None;
    order.sort_by(|&a, &b| match sigma_compare(&labels[b], &labels[a], sigma) {
        Ok(o) => o,
        Err(e) => {
            err = Some(e);
            Ordering::Equal
        }
    });
    if let Some(e) = err {
        return Err(e.into());
    }
    let n = order.len();
    let vars = m.matrix.vars().clone();
    let permuted = Matrix::from_fn(&vars, n, n, |i, j| m.matrix.get(order[i], order[j]).clone());
    let inv = permuted.inverse()?;
    let mut back = Matrix::zeros(&vars, n, n);
    for i in 0..n {
        for j in 0..n {
            back.set(order[i], order[j], inv.get(i, j).clone());
        }
    }
    Ok(OpMatrix::new(m.cols.clone(), m.rows.clone(), back)?)
}

/// `R_{s',s} = [W^{s'}_lambda|_mu]^{-1} [W^s_lambda|_mu]`.
pub fn r_matrix(
    sigma_prime: &Permutation,
    sigma: &Permutation,
    v: u32,
    profile: &SpinProfile,
    vars: &Arc<VarTable>,
) -> Result<RMatrixResult> {
    let a = restriction_matrix(sigma_prime, v, profile, vars)?;
    let b = if sigma == sigma_prime { a.clone() } else { restriction_matrix(sigma, v, profile, vars)? };
    let matrix = chamber_inverse(&a, sigma_prime)?.compose(&b)?;
    Ok(RMatrixResult {
        profile: profile.clone(),
        v,
        sigma_prime: sigma_prime.clone(),
        sigma: sigma.clone(),
        matrix,
    })
}

/// `R_{id,(21)}` for two framing vertices, specialized to `z = z_1 - z_2`.
pub fn r_matrix_w2(v: u32, profile: &SpinProfile) -> Result<OpMatrix> {
    if profile.w() != 2 {
        return Err(RMatrixError::Domain("w = 2 required".into()));
    }
    let vars = profile.var_table(v as usize, &[]);
    let r = r_matrix(&Permutation::identity(2), &Permutation::parse("2,1", 2)?, v, profile, &vars)?;
    r.specialized_w2()
}

/// Number of fixed points of grade `v`.
pub fn basis_size(profile: &SpinProfile, v: u32) -> usize {
    enumerate_fixed_points(profile, v).len()
}
