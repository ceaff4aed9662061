//! Framed shuffle product, weight functions `W^s_lambda`, their restrictions
//! to fixed points, closed forms for two framing vertices, and checks of the
//! triangularity and degree properties.

mod closed;
mod shuffle;
mod verify;
mod weight;

pub use closed::{closed_form_restriction_w2, falling_factorial, rename_into, specialize_w2, w2_table};
pub use shuffle::{shuffle_product, ShuffleElement};
pub use verify::{diagonal_product_formula, verify_weight_properties, z_degree};
pub use weight::{
    restrict, restriction_matrix, weight_function, weight_function_with, Method, WeightFunction,
};

use std::sync::Arc;

use exact_field::{FieldError, MPoly, VarTable};
use quiver_fixedpoints::FixedPointError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeightError {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("shuffle sum is not polynomial: {0}")]
    NotPolynomial(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("size mismatch: {0}")]
    Size(String),
    #[error(transparent)]
    FixedPoint(#[from] FixedPointError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub type Result<T> = std::result::Result<T, WeightError>;

pub(crate) fn named(vars: &Arc<VarTable>, name: &str) -> Result<MPoly> {
    MPoly::var_named(vars, name).map_err(|_| WeightError::Dimension(format!("variable `{name}` is missing from {vars}")))
}

pub(crate) fn y_var(vars: &Arc<VarTable>, i: usize) -> Result<MPoly> {
    named(vars, &format!("y_{}", i + 1))
}

/// Divides an antisymmetrized sum by the Vandermonde `prod_{p<q} (y_p - y_q)`.
pub(crate) fn divide_vandermonde(mut n: MPoly, ys: &[MPoly]) -> Result<MPoly> {
    for q in 1..ys.len() {
        for p in 0..q {
            if n.is_zero() {
                return Ok(n);
            }
            let d = &ys[p] - &ys[q];
            n = n
                .div_exact(&d)
                .ok_or_else(|| WeightError::NotPolynomial(format!("not divisible by {d}")))?;
        }
    }
    Ok(n)
}
