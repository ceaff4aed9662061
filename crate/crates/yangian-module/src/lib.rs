//! The Yangian of sl2 acting on the fixed-point basis: residue formulas for
//! `e_r`, `f_r`, `psi_r`, verification of the defining relations, the `w = 1`
//! evaluation module and the tensor factorization over columns.

mod coproduct;
mod evaluation;
mod module;
mod relations;

pub use coproduct::coproduct_factorization_check;
pub use evaluation::{drinfeld_polynomial, evaluation_rep_check, drinfeld_minus_shift_holds};
pub use module::{Generator, GradedOperator, ModuleBasis, YangianModule};
pub use relations::{
    sample_point, verify_yangian_relations, Mode, RelationCheck, RelationReport, SAMPLE_BOUND, Y5_SIGN,
};

use exact_field::{FieldError, OpMatrix, RFunc};
use quiver_fixedpoints::{FixedPoint, FixedPointError, SpinProfile};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum YangianError {
    #[error("degenerate evaluation: {0}")]
    Degenerate(String),
    #[error("invalid input: {0}")]
    Domain(String),
    #[error(transparent)]
    FixedPoint(#[from] FixedPointError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub type Result<T> = std::result::Result<T, YangianError>;

/// Eigenvalue of `psi(u)` on `lambda`, in the variable `u` of the profile's
/// table with `u` appended.
pub fn psi_eigenvalue(lambda: &FixedPoint, profile: &SpinProfile) -> Result<RFunc> {
    YangianModule::new(profile)?.psi_eigenvalue(lambda)
}

/// `e_r` from grade `v` to grade `v + 1`.
pub fn e_matrix(r: u32, v: u32, profile: &SpinProfile) -> Result<OpMatrix> {
    Ok((*YangianModule::new(profile)?.e_matrix(r, v)?).clone())
}

/// `f_m` from grade `v + 1` to grade `v`.
pub fn f_matrix(m: u32, v: u32, profile: &SpinProfile) -> Result<OpMatrix> {
    Ok((*YangianModule::new(profile)?.f_matrix(m, v)?).clone())
}

/// Diagonal `psi_r` on grade `v`.
pub fn psi_matrix(r: u32, v: u32, profile: &SpinProfile) -> Result<OpMatrix> {
    Ok((*YangianModule::new(profile)?.psi_matrix(r, v)?).clone())
}
