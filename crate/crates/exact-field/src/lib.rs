//! Exact arithmetic kernel: rationals, sparse multivariate polynomials,
//! reduced rational functions, matrices over them, simple-pole residues and
//! expansions at infinity.

pub mod analysis;
pub mod error;
pub mod gcd;
pub mod json;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod report;
pub mod rfunc;
pub mod scalar;
pub mod vars;

pub use analysis::{laurent_at_infinity, residue_at_infinity, residue_by_derivative, residue_simple_pole};
pub use error::{FieldError, Result};
pub use gcd::gcd;
pub use matrix::{Matrix, OpMatrix};
pub use parse::{parse_mpoly, parse_rfunc};
pub use poly::{MPoly, Mono};
pub use report::{Failure, Report};
pub use rfunc::RFunc;
pub use scalar::{binomial, factorial, format_scalar, int, parse_scalar, ratio, ExactScalar};
pub use vars::{VarRole, VarTable};

/// Substitutes rational functions for named variables of a polynomial.
pub fn poly_substitute(p: &MPoly, bindings: &[(&str, RFunc)]) -> Result<RFunc> {
    RFunc::from_poly(p.clone()).substitute_named(bindings)
}

/// Reduces `num/den` to canonical form.
pub fn rfunc_normalize(num: MPoly, den: MPoly) -> Result<RFunc> {
    RFunc::new(num, den)
}

/// Exact matrix inverse.
pub fn matrix_inverse(m: &OpMatrix) -> Result<OpMatrix> {
    m.inverse()
}
