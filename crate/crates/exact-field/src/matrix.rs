use std::fmt;
use std::sync::Arc;

use crate::error::{FieldError, Result};
use crate::gcd::gcd;
use crate::poly::MPoly;
use crate::rfunc::RFunc;
use crate::vars::VarTable;

/// Dense matrix of rational functions, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    vars: Arc<VarTable>,
    rows: usize,
    cols: usize,
    data: Vec<RFunc>,
}

impl Matrix {
    pub fn zeros(vars: &Arc<VarTable>, rows: usize, cols: usize) -> Self {
        Matrix { vars: vars.clone(), rows, cols, data: vec![RFunc::zero(vars); rows * cols] }
    }

    pub fn identity(vars: &Arc<VarTable>, n: usize) -> Self {
        let mut m = Self::zeros(vars, n, n);
        for i in 0..n {
            m.set(i, i, RFunc::one(vars));
        }
        m
    }

    pub fn from_rows(vars: &Arc<VarTable>, rows: Vec<Vec<RFunc>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(FieldError::Shape("ragged rows".into()));
        }
        Ok(Matrix { vars: vars.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(vars: &Arc<VarTable>, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RFunc) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { vars: vars.clone(), rows, cols, data }
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RFunc {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RFunc) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RFunc] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[RFunc] {
        &self.data
    }

    pub fn map(&self, f: impl Fn(&RFunc) -> RFunc) -> Matrix {
        Matrix { vars: self.vars.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map(&self, f: impl Fn(&RFunc) -> Result<RFunc>) -> Result<Matrix> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { vars: self.vars.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.vars, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RFunc::is_zero)
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).is_zero()))
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(FieldError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(&self.vars, self.rows, other.cols, |i, j| {
            let mut acc = RFunc::zero(&self.vars);
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = &acc + &(a * b);
            }
            acc
        }))
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&RFunc, &RFunc) -> RFunc) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(FieldError::Shape("operands differ in shape".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { vars: self.vars.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &RFunc) -> Matrix {
        self.map(|a| a * c)
    }

    /// Determinant by cofactor expansion for small sizes, fraction-free
    /// elimination otherwise.
    pub fn determinant(&self) -> Result<RFunc> {
        if !self.is_square() {
            return Err(FieldError::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        match n {
            0 => Ok(RFunc::one(&self.vars)),
            1 => Ok(self.get(0, 0).clone()),
            2 => Ok(self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0)),
            3 => {
                let mut acc = RFunc::zero(&self.vars);
                for j in 0..3 {
                    let c = self.cofactor(0, j);
                    acc = &acc + &(self.get(0, j) * &c);
                }
                Ok(acc)
            }
            _ => {
                let (p, scales) = self.clear_row_denominators();
                let det_p = bareiss_determinant(&p)?;
                let mut d = RFunc::from_poly(det_p);
                for s in scales {
                    d = d.checked_div(&RFunc::from_poly(s))?;
                }
                Ok(d)
            }
        }
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> Matrix {
        let rows: Vec<usize> = (0..self.rows).filter(|&r| r != skip_r).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&c| c != skip_c).collect();
        Matrix::from_fn(&self.vars, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    fn cofactor(&self, i: usize, j: usize) -> RFunc {
        let m = self.minor(i, j).determinant().expect("square minor");
        if (i + j).is_multiple_of(2) {
            m
        } else {
            -m
        }
    }

    /// Exact inverse: triangular back-substitution when the matrix is
    /// triangular, adjugate for `n <= 3`, fraction-free Gauss-Jordan otherwise.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(FieldError::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        if self.is_lower_triangular() {
            return self.lower_triangular_inverse();
        }
        if self.is_upper_triangular() {
            return Ok(self.transpose().lower_triangular_inverse()?.transpose());
        }
        if n <= 3 {
            return self.adjugate_inverse();
        }
        self.bareiss_inverse()
    }

    fn lower_triangular_inverse(&self) -> Result<Matrix> {
        let n = self.rows;
        let mut inv = Matrix::zeros(&self.vars, n, n);
        for i in 0..n {
            if self.get(i, i).is_zero() {
                return Err(FieldError::Singular { column: i });
            }
        }
        for j in 0..n {
            inv.set(j, j, self.get(j, j).inv()?);
            for i in j + 1..n {
                let mut acc = RFunc::zero(&self.vars);
                for k in j..i {
                    let a = self.get(i, k);
                    if a.is_zero() || inv.get(k, j).is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * inv.get(k, j));
                }
                let v = -(&acc / self.get(i, i));
                inv.set(i, j, v);
            }
        }
        Ok(inv)
    }

    fn adjugate_inverse(&self) -> Result<Matrix> {
        let n = self.rows;
        let det = self.determinant()?;
        if det.is_zero() {
            return Err(FieldError::Singular { column: n - 1 });
        }
        let det_inv = det.inv()?;
        if n == 1 {
            return Ok(Matrix::from_fn(&self.vars, 1, 1, |_, _| det_inv.clone()));
        }
        Ok(Matrix::from_fn(&self.vars, n, n, |i, j| &self.cofactor(j, i) * &det_inv))
    }

    /// Multiplies every row by the monic LCM of its denominators.
    fn clear_row_denominators(&self) -> (Vec<Vec<MPoly>>, Vec<MPoly>) {
        let mut rows = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut l = MPoly::one(&self.vars);
            for a in self.row(i) {
                let g = gcd(&l, a.den());
                l = &l * &a.den().div_exact(&g).expect("gcd divides");
            }
            let row = self
                .row(i)
                .iter()
                .map(|a| a.num() * &l.div_exact(a.den()).expect("lcm is a multiple"))
                .collect();
            rows.push(row);
            scales.push(l);
        }
        (rows, scales)
    }

    fn bareiss_inverse(&self) -> Result<Matrix> {
        let n = self.rows;
        let (p, scales) = self.clear_row_denominators();
        let mut a: Vec<Vec<MPoly>> = p
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                row.extend((0..n).map(|j| if i == j { MPoly::one(&self.vars) } else { MPoly::zero(&self.vars) }));
                row
            })
            .collect();
        let mut prev = MPoly::one(&self.vars);
        for k in 0..n {
            let piv = (k..n).find(|&r| !a[r][k].is_zero()).ok_or(FieldError::Singular { column: k })?;
            a.swap(k, piv);
            for i in 0..n {
                if i == k {
                    continue;
                }
                let aik = a[i][k].clone();
                for j in 0..2 * n {
                    let t = &(&a[k][k] * &a[i][j]) - &(&aik * &a[k][j]);
                    a[i][j] = t.div_exact(&prev).ok_or_else(|| {
                        FieldError::Shape(format!("fraction-free step {k} lost exactness"))
                    })?;
                }
            }
            prev = a[k][k].clone();
        }
        // Now a[i][i] = det for every row and the right block is det * P^{-1}.
        let mut inv = Matrix::zeros(&self.vars, n, n);
        for (i, row) in a.iter().enumerate() {
            for j in 0..n {
                let num = &row[n + j] * &scales[j];
                inv.set(i, j, RFunc::new(num, row[i].clone())?);
            }
        }
        Ok(inv)
    }

    /// Exact structural test against the identity.
    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            }))
    }
}

fn bareiss_determinant(p: &[Vec<MPoly>]) -> Result<MPoly> {
    let n = p.len();
    let vars = p[0][0].vars().clone();
    let mut a = p.to_vec();
    let mut prev = MPoly::one(&vars);
    let mut sign = false;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Ok(MPoly::zero(&vars));
        };
        if piv != k {
            a.swap(k, piv);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.div_exact(&prev).ok_or_else(|| FieldError::Shape("fraction-free step lost exactness".into()))?;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(if sign { -&prev } else { prev })
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Matrix whose rows and columns carry integer-tuple labels (fixed points or
/// binary strings).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpMatrix {
    pub rows: Vec<Vec<u32>>,
    pub cols: Vec<Vec<u32>>,
    pub matrix: Matrix,
}

impl OpMatrix {
    pub fn new(rows: Vec<Vec<u32>>, cols: Vec<Vec<u32>>, matrix: Matrix) -> Result<Self> {
        if rows.len() != matrix.nrows() || cols.len() != matrix.ncols() {
            return Err(FieldError::Shape("labels do not match matrix dimensions".into()));
        }
        let unique = |l: &[Vec<u32>]| l.iter().enumerate().all(|(i, a)| !l[..i].contains(a));
        if !unique(&rows) || !unique(&cols) {
            return Err(FieldError::Shape("duplicate labels".into()));
        }
        Ok(OpMatrix { rows, cols, matrix })
    }

    pub fn zeros(vars: &Arc<VarTable>, rows: Vec<Vec<u32>>, cols: Vec<Vec<u32>>) -> Self {
        let matrix = Matrix::zeros(vars, rows.len(), cols.len());
        OpMatrix { rows, cols, matrix }
    }

    pub fn row_of(&self, label: &[u32]) -> Option<usize> {
        self.rows.iter().position(|r| r == label)
    }

    pub fn col_of(&self, label: &[u32]) -> Option<usize> {
        self.cols.iter().position(|c| c == label)
    }

    /// Entry addressed by labels; zero if either label is absent.
    pub fn entry(&self, row: &[u32], col: &[u32]) -> RFunc {
        match (self.row_of(row), self.col_of(col)) {
            (Some(i), Some(j)) => self.matrix.get(i, j).clone(),
            _ => RFunc::zero(self.matrix.vars()),
        }
    }

    /// Composition `self * other`, requiring matching inner labels.
    pub fn compose(&self, other: &OpMatrix) -> Result<OpMatrix> {
        if self.cols != other.rows {
            return Err(FieldError::Shape("inner labels differ".into()));
        }
        Ok(OpMatrix { rows: self.rows.clone(), cols: other.cols.clone(), matrix: self.matrix.try_mul(&other.matrix)? })
    }

    pub fn inverse(&self) -> Result<OpMatrix> {
        Ok(OpMatrix { rows: self.cols.clone(), cols: self.rows.clone(), matrix: self.matrix.inverse()? })
    }
}
