//! The graded module spanned by fixed points, with the operators `e_r`, `f_m`
//! and `psi_r` given by the residue formulas.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use exact_field::{int, laurent_at_infinity, residue_simple_pole, ExactScalar, MPoly, Matrix, OpMatrix, RFunc, VarTable};
use quiver_fixedpoints::{enumerate_fixed_points, FixedPoint, FixedPointError, Spin, SpinProfile};

use crate::{Result, YangianError};

/// Generator family of an operator block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    E,
    F,
    Psi,
}

/// Fixed points of every grade up to a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleBasis {
    pub profile: SpinProfile,
    pub grades: Vec<Vec<FixedPoint>>,
}

impl ModuleBasis {
    pub fn new(profile: &SpinProfile, v_max: u32) -> Self {
        let grades = (0..=v_max).map(|v| enumerate_fixed_points(profile, v)).collect();
        ModuleBasis { profile: profile.clone(), grades }
    }

    pub fn grade(&self, v: u32) -> &[FixedPoint] {
        self.grades.get(v as usize).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dimension(&self) -> usize {
        self.grades.iter().map(Vec::len).sum()
    }
}

/// One generator with a fixed index, stored blockwise by source grade.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedOperator {
    pub generator: Generator,
    pub index: u32,
    /// `(source grade, block)`; each block maps the source grade to
    /// `source + 1`, `source - 1` or `source` for `e`, `f`, `psi`.
    pub blocks: Vec<(u32, OpMatrix)>,
}

#[derive(Debug, Clone)]
struct Column {
    spin: Spin,
    ell: MPoly,
    z: MPoly,
}

type Key = (Generator, u32, u32);

/// Operator data for one spin profile, either symbolic in `hbar, z_j` or
/// specialized at a point.
///
/// Blocks are memoized per `(generator, index, grade)`. The cache is
/// write-once: concurrent callers may compute the same block twice, and the
/// first stored value wins.
#[derive(Debug)]
pub struct YangianModule {
    profile: SpinProfile,
    vars: Arc<VarTable>,
    u: usize,
    hbar: MPoly,
    columns: Vec<Column>,
    cache: Mutex<HashMap<Key, Arc<OpMatrix>>>,
}

impl YangianModule {
    /// Symbolic module over `Q(hbar, z_1..z_w)` with spectral variable `u`.
    pub fn new(profile: &SpinProfile) -> Result<Self> {
        let vars = profile.var_table(0, &["u"]);
        let hbar = MPoly::var_named(&vars, "hbar")?;
        let mut columns = Vec::with_capacity(profile.w());
        for j in 0..profile.w() {
            columns.push(Column {
                spin: profile.spin(j),
                ell: profile.ell_poly(j, &vars).map_err(YangianError::from)?,
                z: MPoly::var_named(&vars, &format!("z_{}", j + 1))?,
            });
        }
        Self::from_columns(vars, hbar, columns)
    }

    /// Module with `hbar` and every `z_j` replaced by exact constants.
    pub fn at_point(profile: &SpinProfile, hbar: &ExactScalar, z: &[ExactScalar]) -> Result<Self> {
        if z.len() != profile.w() {
            return Err(YangianError::Domain(format!("{} values for {} framing weights", z.len(), profile.w())));
        }
        let symbolic = Self::new(profile)?;
        let vars = symbolic.vars.clone();
        let columns = symbolic
            .columns
            .into_iter()
            .zip(z)
            .map(|(c, zj)| Column { z: MPoly::constant(&vars, zj.clone()), ..c })
            .collect();
        Self::from_columns(vars.clone(), MPoly::constant(&vars, hbar.clone()), columns)
    }

    fn from_columns(vars: Arc<VarTable>, hbar: MPoly, columns: Vec<Column>) -> Result<Self> {
        let profile = SpinProfile::from_spins(columns.iter().map(|c| c.spin).collect()).map_err(YangianError::from)?;
        let u = vars.require("u")?;
        Ok(YangianModule { profile, vars, u, hbar, columns, cache: Mutex::new(HashMap::new()) })
    }

    /// The `w = 1` module of column `j`, sharing this module's variables, so
    /// its framing weight is `z_j` rather than `z_1`.
    pub fn column_module(&self, j: usize) -> Result<Self> {
        let col = self.columns.get(j).cloned().ok_or_else(|| YangianError::Domain(format!("no column {j}")))?;
        Self::from_columns(self.vars.clone(), self.hbar.clone(), vec![col])
    }

    pub fn profile(&self) -> &SpinProfile {
        &self.profile
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    /// Index of the spectral variable `u`.
    pub fn u(&self) -> usize {
        self.u
    }

    pub fn hbar(&self) -> &MPoly {
        &self.hbar
    }

    /// Framing weight `z_j` (a variable or a constant).
    pub fn z(&self, j: usize) -> &MPoly {
        &self.columns[j].z
    }

    /// Spin `l_j` as a polynomial.
    pub fn ell(&self, j: usize) -> &MPoly {
        &self.columns[j].ell
    }

    pub fn basis(&self, v: u32) -> Vec<FixedPoint> {
        enumerate_fixed_points(&self.profile, v)
    }

    /// `z_j - (l_j - 2k) hbar`.
    pub fn box_weight(&self, j: usize, k: u32) -> MPoly {
        let c = &self.columns[j];
        let shift = &c.ell - &MPoly::from_int(&self.vars, 2 * k as i64);
        &c.z - &(&shift * &self.hbar)
    }

    fn check(&self, lambda: &FixedPoint) -> Result<()> {
        if !self.profile.contains(lambda) {
            return Err(FixedPointError::OutOfBounds { point: lambda.to_string(), profile: self.profile.to_string() }.into());
        }
        Ok(())
    }

    /// Chern roots of `lambda`, column-major.
    pub fn roots(&self, lambda: &FixedPoint) -> Result<Vec<MPoly>> {
        self.check(lambda)?;
        let mut out = Vec::new();
        for (j, &vj) in lambda.0.iter().enumerate() {
            out.extend((0..vj).map(|k| self.box_weight(j, k)));
        }
        Ok(out)
    }

    fn u_minus(&self, p: &MPoly) -> MPoly {
        &MPoly::var(&self.vars, self.u) - p
    }

    fn two_hbar(&self) -> MPoly {
        self.hbar.scale(&int(2))
    }

    /// Framing factors `(u - z_j - l_j hbar) / (u - z_j + l_j hbar)`.
    fn framing_factors(&self, num: &mut Vec<MPoly>, den: &mut Vec<MPoly>) {
        for c in &self.columns {
            let lh = &c.ell * &self.hbar;
            num.push(self.u_minus(&(&c.z + &lh)));
            den.push(self.u_minus(&(&c.z - &lh)));
        }
    }

    /// Eigenvalue of `psi(u)` on `lambda`:
    /// `prod_x (u - x + 2hbar)/(u - x - 2hbar) * prod_j (u - z_j - l_j hbar)/(u - z_j + l_j hbar)`.
    pub fn psi_eigenvalue(&self, lambda: &FixedPoint) -> Result<RFunc> {
        let two = self.two_hbar();
        let mut num = Vec::new();
        let mut den = Vec::new();
        for x in self.roots(lambda)? {
            num.push(self.u_minus(&(&x - &two)));
            den.push(self.u_minus(&(&x + &two)));
        }
        self.framing_factors(&mut num, &mut den);
        Ok(RFunc::from_factors(&self.vars, int(1), &num, &den)?)
    }

    /// The function whose residue at the box added in column `j` is
    /// `<lambda|e_r|lambda + box>`.
    pub fn e_integrand(&self, r: u32, lambda: &FixedPoint) -> Result<RFunc> {
        let two = self.two_hbar();
        let mut num: Vec<MPoly> = (0..r).map(|_| MPoly::var(&self.vars, self.u)).collect();
        let mut den = Vec::new();
        for x in self.roots(lambda)? {
            num.push(self.u_minus(&x));
            den.push(self.u_minus(&(&x + &two)));
        }
        self.framing_factors(&mut num, &mut den);
        Ok(RFunc::from_factors(&self.vars, int(1), &num, &den)?)
    }

    /// `<lambda|e_r|lambda + box_j>`; zero when column `j` is full.
    pub fn e_entry(&self, r: u32, lambda: &FixedPoint, j: usize) -> Result<RFunc> {
        self.check(lambda)?;
        if !self.profile.can_raise(j, lambda.0[j]) {
            return Ok(RFunc::zero(&self.vars));
        }
        let pole = RFunc::from_poly(self.box_weight(j, lambda.0[j]));
        Ok(residue_simple_pole(&self.e_integrand(r, lambda)?, self.u, &pole)?)
    }

    /// `<lambda + box_j|f_m|lambda>`, the evaluation of
    /// `x^m prod_y (x - y + 2hbar)/(x - y)` at the added box weight `x`.
    pub fn f_entry(&self, m: u32, lambda: &FixedPoint, j: usize) -> Result<RFunc> {
        self.check(lambda)?;
        if !self.profile.can_raise(j, lambda.0[j]) {
            return Ok(RFunc::zero(&self.vars));
        }
        let x = self.box_weight(j, lambda.0[j]);
        let two = self.two_hbar();
        let mut num: Vec<MPoly> = (0..m).map(|_| x.clone()).collect();
        let mut den = Vec::new();
        for y in self.roots(lambda)? {
            let d = &x - &y;
            if d.is_zero() {
                return Err(YangianError::Degenerate(format!("added box of {lambda} in column {} meets a root", j + 1)));
            }
            num.push(&d + &two);
            den.push(d);
        }
        Ok(RFunc::from_factors(&self.vars, int(1), &num, &den)?)
    }

    /// `psi_0 .. psi_order` on `lambda`, from the expansion
    /// `psi(u) = 1 + 2 hbar sum_i psi_i u^(-i-1)`.
    pub fn psi_coefficients(&self, lambda: &FixedPoint, order: u32) -> Result<Vec<RFunc>> {
        let series = laurent_at_infinity(&self.psi_eigenvalue(lambda)?, self.u, order as usize + 1)?;
        let inv = RFunc::from_poly(self.two_hbar()).inv()?;
        Ok(series[1..].iter().map(|c| c * &inv).collect())
    }

    fn cached(&self, key: Key, build: impl FnOnce() -> Result<OpMatrix>) -> Result<Arc<OpMatrix>> {
        if let Some(m) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(m.clone());
        }
        let m = Arc::new(build()?);
        Ok(self.cache.lock().expect("cache lock").entry(key).or_insert(m).clone())
    }

    /// `e_r` from grade `v` to grade `v + 1`; entry `(lambda + box, lambda)`.
    pub fn e_matrix(&self, r: u32, v: u32) -> Result<Arc<OpMatrix>> {
        self.cached((Generator::E, r, v), || {
            let src = self.basis(v);
            let dst = self.basis(v + 1);
            let mut m = Matrix::zeros(&self.vars, dst.len(), src.len());
            for (c, lambda) in src.iter().enumerate() {
                for j in 0..self.profile.w() {
                    let target = lambda.raised(j);
                    if let Some(row) = dst.iter().position(|p| *p == target) {
                        m.set(row, c, self.e_entry(r, lambda, j)?);
                    }
                }
            }
            Ok(OpMatrix::new(labels(&dst), labels(&src), m)?)
        })
    }

    /// `f_m` from grade `v + 1` to grade `v`; entry `(lambda, lambda + box)`.
    pub fn f_matrix(&self, m: u32, v: u32) -> Result<Arc<OpMatrix>> {
        self.cached((Generator::F, m, v), || {
            let src = self.basis(v + 1);
            let dst = self.basis(v);
            let mut out = Matrix::zeros(&self.vars, dst.len(), src.len());
            for (row, lambda) in dst.iter().enumerate() {
                for j in 0..self.profile.w() {
                    let target = lambda.raised(j);
                    if let Some(c) = src.iter().position(|p| *p == target) {
                        out.set(row, c, self.f_entry(m, lambda, j)?);
                    }
                }
            }
            Ok(OpMatrix::new(labels(&dst), labels(&src), out)?)
        })
    }

    /// Diagonal `psi_r` on grade `v`.
    pub fn psi_matrix(&self, r: u32, v: u32) -> Result<Arc<OpMatrix>> {
        self.cached((Generator::Psi, r, v), || {
            let basis = self.basis(v);
            let mut m = Matrix::zeros(&self.vars, basis.len(), basis.len());
            for (i, lambda) in basis.iter().enumerate() {
                let coeffs = self.psi_coefficients(lambda, r)?;
                m.set(i, i, coeffs[r as usize].clone());
            }
            Ok(OpMatrix::new(labels(&basis), labels(&basis), m)?)
        })
    }

    /// Blocks of one generator for source grades `0..=v_max`.
    pub fn graded_operator(&self, generator: Generator, index: u32, v_max: u32) -> Result<GradedOperator> {
        let mut blocks = Vec::new();
        for v in 0..=v_max {
            let block = match generator {
                Generator::E => self.e_matrix(index, v)?,
                Generator::F if v == 0 => continue,
                Generator::F => self.f_matrix(index, v - 1)?,
                Generator::Psi => self.psi_matrix(index, v)?,
            };
            blocks.push((v, (*block).clone()));
        }
        Ok(GradedOperator { generator, index, blocks })
    }

    /// Doubles the first nonzero entry of the `e_r` block at grade `v`.
    /// Used as a negative control for the relation checks.
    pub fn corrupt_e_entry(&mut self, r: u32, v: u32) -> Result<bool> {
        let mut block = (*self.e_matrix(r, v)?).clone();
        let hit = (0..block.matrix.nrows())
            .flat_map(|i| (0..block.matrix.ncols()).map(move |j| (i, j)))
            .find(|&(i, j)| !block.matrix.get(i, j).is_zero());
        let Some((i, j)) = hit else { return Ok(false) };
        let doubled = block.matrix.get(i, j).scale(&int(2));
        block.matrix.set(i, j, doubled);
        self.cache.get_mut().expect("cache lock").insert((Generator::E, r, v), Arc::new(block));
        Ok(true)
    }
}

pub(crate) fn labels(points: &[FixedPoint]) -> Vec<Vec<u32>> {
    points.iter().map(|p| p.0.clone()).collect()
}
