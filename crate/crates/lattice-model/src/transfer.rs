//! Vectors, covectors and operators on `(K^2)^{(x) v}` and the column
//! transfer operators `T^(l)_{m,n}(x)`.

use std::sync::Arc;

use exact_field::{MPoly, Matrix, OpMatrix, RFunc, VarTable};

use crate::state::VertexConfig;
use crate::{LatticeError, Result};

/// Binary strings of length `v`, lexicographically ascending; `a_1` is the
/// most significant digit of the index.
pub fn binary_basis(v: usize) -> Vec<Vec<u32>> {
    (0..1usize << v).map(|k| (0..v).map(|i| ((k >> (v - 1 - i)) & 1) as u32).collect()).collect()
}

pub(crate) fn index_of(a: &[u32]) -> usize {
    a.iter().fold(0, |acc, &x| (acc << 1) | x as usize)
}

fn check_binary(a: &[u32], v: usize) -> Result<()> {
    if a.len() != v || a.iter().any(|&x| x > 1) {
        return Err(LatticeError::Domain(format!("{a:?} is not a binary string of length {v}")));
    }
    Ok(())
}

/// A vector `sum_a c_a |a>`.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorVector {
    pub v: usize,
    pub coeffs: Vec<RFunc>,
}

/// A covector `sum_b c_b <b|`.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorCovector {
    pub v: usize,
    pub coeffs: Vec<RFunc>,
}

impl TensorVector {
    pub fn basis(vars: &Arc<VarTable>, a: &[u32]) -> Result<Self> {
        check_binary(a, a.len())?;
        let mut coeffs = vec![RFunc::zero(vars); 1 << a.len()];
        coeffs[index_of(a)] = RFunc::one(vars);
        Ok(TensorVector { v: a.len(), coeffs })
    }

    pub fn coeff(&self, a: &[u32]) -> &RFunc {
        &self.coeffs[index_of(a)]
    }

    /// `op |self>` for an operator with binary labels.
    pub fn apply(&self, op: &OpMatrix) -> TensorVector {
        let m = &op.matrix;
        let coeffs = (0..m.nrows())
            .map(|r| {
                let mut acc = RFunc::zero(m.vars());
                for (c, x) in self.coeffs.iter().enumerate() {
                    let e = m.get(r, c);
                    if !x.is_zero() && !e.is_zero() {
                        acc = &acc + &(e * x);
                    }
                }
                acc
            })
            .collect();
        TensorVector { v: self.v, coeffs }
    }
}

impl TensorCovector {
    pub fn basis(vars: &Arc<VarTable>, b: &[u32]) -> Result<Self> {
        check_binary(b, b.len())?;
        let mut coeffs = vec![RFunc::zero(vars); 1 << b.len()];
        coeffs[index_of(b)] = RFunc::one(vars);
        Ok(TensorCovector { v: b.len(), coeffs })
    }

    pub fn coeff(&self, b: &[u32]) -> &RFunc {
        &self.coeffs[index_of(b)]
    }

    /// `<self| op`.
    pub fn apply(&self, op: &OpMatrix) -> TensorCovector {
        let m = &op.matrix;
        let coeffs = (0..m.ncols())
            .map(|c| {
                let mut acc = RFunc::zero(m.vars());
                for (r, x) in self.coeffs.iter().enumerate() {
                    let e = m.get(r, c);
                    if !x.is_zero() && !e.is_zero() {
                        acc = &acc + &(x * e);
                    }
                }
                acc
            })
            .collect();
        TensorCovector { v: self.v, coeffs }
    }

    /// The pairing `<self|vec>`.
    pub fn pair(&self, vec: &TensorVector) -> RFunc {
        let mut acc = RFunc::zero(vec.coeffs[0].vars());
        for (x, y) in self.coeffs.iter().zip(&vec.coeffs) {
            if !x.is_zero() && !y.is_zero() {
                acc = &acc + &(x * y);
            }
        }
        acc
    }

    pub fn scale(&self, c: &RFunc) -> TensorCovector {
        TensorCovector { v: self.v, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }
}

/// A thick vertical line: its spin as a polynomial, the label bound when the
/// spin is concrete, and its spectral parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub l: MPoly,
    pub bound: Option<u32>,
    pub x: MPoly,
}

/// `T^(l)_{m,n}(x)`: entry `<b|T|a>` is the weight of the unique column
/// with top label `m`, bottom label `n`, left labels `b` and right labels `a`,
/// rows `1..v` carrying `y_1..y_v`.
pub fn column_transfer(col: &Column, m: u32, n: u32, ys: &[MPoly], hbar: &MPoly) -> Result<OpMatrix> {
    if let Some(l) = col.bound {
        if m > l || n > l {
            return Err(LatticeError::Domain(format!("labels m = {m}, n = {n} exceed the spin {l}")));
        }
    }
    let vars = hbar.vars();
    let v = ys.len();
    let basis = binary_basis(v);
    let mut matrix = Matrix::zeros(vars, basis.len(), basis.len());
    for (r, b) in basis.iter().enumerate() {
        for (c, a) in basis.iter().enumerate() {
            if let Some(weight) = column_weight(col, m, n, b, a, ys, hbar) {
                matrix.set(r, c, RFunc::from_poly(weight));
            }
        }
    }
    Ok(OpMatrix::new(basis.clone(), basis, matrix)?)
}

fn column_weight(col: &Column, m: u32, n: u32, b: &[u32], a: &[u32], ys: &[MPoly], hbar: &MPoly) -> Option<MPoly> {
    let mut label = n;
    let mut weight = MPoly::one(hbar.vars());
    for i in (0..ys.len()).rev() {
        let cfg = VertexConfig::from_conservation(b[i], label, a[i])?;
        if !cfg.is_valid(col.bound) {
            return None;
        }
        weight = &weight * &cfg.weight(&col.l, &(&ys[i] - &col.x), hbar);
        if weight.is_zero() {
            return None;
        }
        label = cfg.top;
    }
    (label == m).then_some(weight)
}

/// A two-site operator acting on sites `p, p + 1` (0-based) of `v` sites.
pub fn embed_two_site(op: &OpMatrix, p: usize, v: usize) -> Result<OpMatrix> {
    if p + 1 >= v || op.matrix.nrows() != 4 || op.matrix.ncols() != 4 {
        return Err(LatticeError::Domain(format!("cannot place a two-site operator at {p} of {v}")));
    }
    let vars = op.matrix.vars();
    let basis = binary_basis(v);
    let mut matrix = Matrix::zeros(vars, basis.len(), basis.len());
    for (r, b) in basis.iter().enumerate() {
        for (c, a) in basis.iter().enumerate() {
            let same_elsewhere = (0..v).filter(|&i| i != p && i != p + 1).all(|i| a[i] == b[i]);
            if same_elsewhere {
                let e = op.matrix.get(index_of(&b[p..p + 2]), index_of(&a[p..p + 2]));
                if !e.is_zero() {
                    matrix.set(r, c, e.clone());
                }
            }
        }
    }
    Ok(OpMatrix::new(basis.clone(), basis, matrix)?)
}
