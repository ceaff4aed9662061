//! Mechanical verification of the defining relations on grade blocks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use exact_field::{int, ratio, ExactScalar, Matrix, OpMatrix, RFunc, Report};
use quiver_fixedpoints::SpinProfile;

use crate::module::{labels, YangianModule};
use crate::{Result, YangianError};

/// Sign `s` in `[e_r, f_s] = s * 2 hbar psi_{r+s}` realized by the residue
/// formulas. With `s = +1` the relation fails; the module satisfies it with
/// `s = -1`, equivalently with generators `(-e_r, f_r, psi_r)`.
pub const Y5_SIGN: i64 = -1;

/// Largest numerator and denominator of a randomized sample.
pub const SAMPLE_BOUND: i64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Randomized { seed: u64, trials: usize },
}

/// Outcome of one relation at one grade and index pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub relation: String,
    pub grade: u32,
    pub indices: Vec<u32>,
    pub trial: Option<usize>,
    pub passed: bool,
    pub counterexample: Option<String>,
}

impl RelationCheck {
    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "relation": self.relation,
            "grade": self.grade,
            "indices": self.indices,
            "status": if self.passed { "pass" } else { "fail" },
        });
        if let Some(t) = self.trial {
            out["trial"] = json!(t);
        }
        if let Some(c) = &self.counterexample {
            out["counterexample"] = json!(c);
        }
        out
    }
}

/// All relation checks of one run, plus how often `[e_r, f_s]` matched Y5
/// with the sign `+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
    pub y5_plus_sign: (usize, usize),
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.checks.iter().map(RelationCheck::to_json).collect())
    }

    /// Per-relation tallies in the shared report format.
    pub fn summary(&self, suite: &str) -> Report {
        let mut report = Report::new(suite);
        for c in &self.checks {
            report.record(
                &c.relation,
                c.passed,
                || {
                    let mut ctx = json!({ "grade": c.grade, "indices": c.indices });
                    if let Some(t) = c.trial {
                        ctx["trial"] = json!(t);
                    }
                    ctx
                },
                || c.counterexample.clone().unwrap_or_default(),
            );
        }
        let (held, total) = self.y5_plus_sign;
        report.note(format!(
            "[e_r,f_s] = {}2 hbar psi_(r+s) verified; sign +2 hbar holds in {held} of {total} cases",
            if Y5_SIGN < 0 { "-" } else { "+" }
        ));
        report
    }

    fn merge(&mut self, other: RelationReport) {
        self.checks.extend(other.checks);
        self.y5_plus_sign.0 += other.y5_plus_sign.0;
        self.y5_plus_sign.1 += other.y5_plus_sign.1;
    }
}

/// Relations Y1-Y5 for source grades `0..=v_max` and indices `0..=r_max`.
pub fn verify_yangian_relations(profile: &SpinProfile, v_max: u32, r_max: u32, mode: Mode) -> Result<RelationReport> {
    match mode {
        Mode::Symbolic => YangianModule::new(profile)?.verify_relations(v_max, r_max, None),
        Mode::Randomized { seed, trials } => {
            if profile.is_symbolic() {
                return Err(YangianError::Domain("randomized mode needs concrete spins".into()));
            }
            let parts: Vec<Result<RelationReport>> = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let (hbar, z) = sample_point(profile, seed, t);
                    YangianModule::at_point(profile, &hbar, &z)?.verify_relations(v_max, r_max, Some(t))
                })
                .collect();
            let mut out = RelationReport { checks: Vec::new(), y5_plus_sign: (0, 0) };
            for p in parts {
                out.merge(p?);
            }
            Ok(out)
        }
    }
}

fn sample(rng: &mut ChaCha8Rng) -> ExactScalar {
    let n = rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND);
    let d = rng.gen_range(1..=SAMPLE_BOUND);
    ratio(n, d)
}

/// Exact random `(hbar, z)` avoiding `hbar = 0` and `z_i - z_j = a hbar` for
/// `|a| <= 2 sum l`. Trial `t` of a seed is reproducible on its own.
pub fn sample_point(profile: &SpinProfile, seed: u64, trial: usize) -> (ExactScalar, Vec<ExactScalar>) {
    let bound = 2 * profile.values().map(|v| v.iter().sum::<u32>()).unwrap_or(0) as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    loop {
        let hbar = sample(&mut rng);
        let z: Vec<ExactScalar> = (0..profile.w()).map(|_| sample(&mut rng)).collect();
        if hbar == int(0) {
            continue;
        }
        let clash = (0..z.len()).any(|i| {
            (0..z.len()).any(|j| i != j && (-bound..=bound).any(|a| z[i].clone() - &z[j] == int(a) * &hbar))
        });
        if !clash {
            return (hbar, z);
        }
    }
}

fn mul(a: &OpMatrix, b: &OpMatrix) -> Result<OpMatrix> {
    Ok(a.compose(b)?)
}

fn sub(a: &OpMatrix, b: &OpMatrix) -> Result<OpMatrix> {
    Ok(OpMatrix { rows: a.rows.clone(), cols: a.cols.clone(), matrix: a.matrix.try_sub(&b.matrix)? })
}

fn add(a: &OpMatrix, b: &OpMatrix) -> Result<OpMatrix> {
    Ok(OpMatrix { rows: a.rows.clone(), cols: a.cols.clone(), matrix: a.matrix.try_add(&b.matrix)? })
}

fn scale(a: &OpMatrix, c: &RFunc) -> OpMatrix {
    OpMatrix { rows: a.rows.clone(), cols: a.cols.clone(), matrix: a.matrix.scale(c) }
}

fn commutator(a: &OpMatrix, b_before: &OpMatrix, b_after: &OpMatrix, a_before: &OpMatrix) -> Result<OpMatrix> {
    sub(&mul(a, b_before)?, &mul(b_after, a_before)?)
}

fn first_difference(a: &OpMatrix, b: &OpMatrix) -> Option<String> {
    for i in 0..a.matrix.nrows() {
        for j in 0..a.matrix.ncols() {
            if a.matrix.get(i, j) != b.matrix.get(i, j) {
                return Some(format!(
                    "entry ({:?},{:?}): lhs {} rhs {}",
                    a.rows[i],
                    a.cols[j],
                    a.matrix.get(i, j),
                    b.matrix.get(i, j)
                ));
            }
        }
    }
    None
}

impl YangianModule {
    fn zero_block(&self, to: u32, from: u32) -> OpMatrix {
        let vars = self.vars();
        let rows = labels(&self.basis(to));
        let cols = labels(&self.basis(from));
        let m = Matrix::zeros(vars, rows.len(), cols.len());
        OpMatrix { rows, cols, matrix: m }
    }

    /// `e_r` with source grade `from`.
    fn e_op(&self, r: u32, from: u32) -> Result<OpMatrix> {
        Ok((*self.e_matrix(r, from)?).clone())
    }

    /// `f_s` with source grade `from`; the zero map out of grade 0.
    fn f_op(&self, s: u32, from: u32) -> Result<OpMatrix> {
        if from == 0 {
            let cols = labels(&self.basis(0));
            return Ok(OpMatrix { rows: Vec::new(), cols: cols.clone(), matrix: Matrix::zeros(self.vars(), 0, cols.len()) });
        }
        Ok((*self.f_matrix(s, from - 1)?).clone())
    }

    fn psi_op(&self, r: u32, at: u32) -> Result<OpMatrix> {
        Ok((*self.psi_matrix(r, at)?).clone())
    }

    fn two_hbar_rf(&self) -> RFunc {
        RFunc::from_poly(self.hbar().scale(&int(2)))
    }

    /// Runs every relation at every source grade up to `v_max`.
    pub fn verify_relations(&self, v_max: u32, r_max: u32, trial: Option<usize>) -> Result<RelationReport> {
        let parts: Vec<Result<RelationReport>> =
            (0..=v_max).into_par_iter().map(|v| self.verify_grade(v, r_max, trial)).collect();
        let mut out = RelationReport { checks: Vec::new(), y5_plus_sign: (0, 0) };
        for p in parts {
            out.merge(p?);
        }
        Ok(out)
    }

    fn verify_grade(&self, v: u32, r_max: u32, trial: Option<usize>) -> Result<RelationReport> {
        let mut checks = Vec::new();
        let mut y5_plus_sign = (0, 0);
        let mut push = |relation: &str, indices: Vec<u32>, lhs: &OpMatrix, rhs: &OpMatrix| {
            let cex = first_difference(lhs, rhs);
            checks.push(RelationCheck {
                relation: relation.to_string(),
                grade: v,
                indices,
                trial,
                passed: cex.is_none(),
                counterexample: cex,
            });
        };
        let two_h = self.two_hbar_rf();
        let minus_two_h = -&two_h;
        let two = RFunc::from_int(self.vars(), 2);
        let minus_two = RFunc::from_int(self.vars(), -2);

        // Y1
        for r in 0..=r_max {
            for s in r + 1..=r_max {
                let a = self.psi_op(r, v)?;
                let b = self.psi_op(s, v)?;
                let lhs = sub(&mul(&a, &b)?, &mul(&b, &a)?)?;
                push("Y1", vec![r, s], &lhs, &self.zero_block(v, v));
            }
        }
        // Y2
        let psi0_here = self.psi_op(0, v)?;
        let psi0_up = self.psi_op(0, v + 1)?;
        let psi0_down = if v > 0 { Some(self.psi_op(0, v - 1)?) } else { None };
        for s in 0..=r_max {
            let e = self.e_op(s, v)?;
            let lhs = commutator(&psi0_up, &e, &e, &psi0_here)?;
            push("Y2e", vec![s], &lhs, &scale(&e, &two));
            if let Some(down) = &psi0_down {
                let f = self.f_op(s, v)?;
                let lhs = commutator(down, &f, &f, &psi0_here)?;
                push("Y2f", vec![s], &lhs, &scale(&f, &minus_two));
            }
        }
        // Y3
        for r in 0..=r_max {
            for s in 0..=r_max {
                let (p, p1) = (self.psi_op(r, v)?, self.psi_op(r + 1, v)?);
                let (pu, pu1) = (self.psi_op(r, v + 1)?, self.psi_op(r + 1, v + 1)?);
                let (e, e1) = (self.e_op(s, v)?, self.e_op(s + 1, v)?);
                let lhs = sub(&commutator(&pu1, &e, &e, &p1)?, &commutator(&pu, &e1, &e1, &p)?)?;
                let rhs = scale(&add(&mul(&pu, &e)?, &mul(&e, &p)?)?, &two_h);
                push("Y3e", vec![r, s], &lhs, &rhs);
                if v > 0 {
                    let (pd, pd1) = (self.psi_op(r, v - 1)?, self.psi_op(r + 1, v - 1)?);
                    let (f, f1) = (self.f_op(s, v)?, self.f_op(s + 1, v)?);
                    let lhs = sub(&commutator(&pd1, &f, &f, &p1)?, &commutator(&pd, &f1, &f1, &p)?)?;
                    let rhs = scale(&add(&mul(&pd, &f)?, &mul(&f, &p)?)?, &minus_two_h);
                    push("Y3f", vec![r, s], &lhs, &rhs);
                }
            }
        }
        // Y4
        for r in 0..=r_max {
            for s in 0..=r_max {
                let ee = |a: u32, b: u32| -> Result<OpMatrix> { mul(&self.e_op(a, v + 1)?, &self.e_op(b, v)?) };
                let lhs = sub(&sub(&ee(r + 1, s)?, &ee(s, r + 1)?)?, &sub(&ee(r, s + 1)?, &ee(s + 1, r)?)?)?;
                let rhs = scale(&add(&ee(r, s)?, &ee(s, r)?)?, &two_h);
                push("Y4e", vec![r, s], &lhs, &rhs);
                if v >= 2 {
                    let ff = |a: u32, b: u32| -> Result<OpMatrix> { mul(&self.f_op(a, v - 1)?, &self.f_op(b, v)?) };
                    let lhs = sub(&sub(&ff(r + 1, s)?, &ff(s, r + 1)?)?, &sub(&ff(r, s + 1)?, &ff(s + 1, r)?)?)?;
                    let rhs = scale(&add(&ff(r, s)?, &ff(s, r)?)?, &minus_two_h);
                    push("Y4f", vec![r, s], &lhs, &rhs);
                }
            }
        }
        // Y5
        let sign = RFunc::from_int(self.vars(), Y5_SIGN);
        for r in 0..=r_max {
            for s in 0..=r_max {
                let fe = mul(&self.f_op(s, v + 1)?, &self.e_op(r, v)?)?;
                let lhs = if v > 0 { sub(&mul(&self.e_op(r, v - 1)?, &self.f_op(s, v)?)?, &fe)? } else { scale(&fe, &RFunc::from_int(self.vars(), -1)) };
                let psi = scale(&self.psi_op(r + s, v)?, &two_h);
                push("Y5", vec![r, s], &lhs, &scale(&psi, &sign));
                if first_difference(&lhs, &psi).is_none() {
                    y5_plus_sign.0 += 1;
                }
                y5_plus_sign.1 += 1;
            }
        }
        Ok(RelationReport { checks, y5_plus_sign })
    }
}
