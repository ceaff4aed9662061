//! Lattice states: vertical labels on a `(v + 1) x w` grid with horizontal
//! labels derived from conservation, vertex configurations and their weights.

use serde_json::{json, Value};

use exact_field::MPoly;
use quiver_fixedpoints::{FixedPoint, SpinProfile};

use crate::{LatticeError, Result};

/// Labels on the four edges around a vertex. Paths run left to right and
/// bottom to top, so `left + bottom = right + top`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexConfig {
    pub left: u32,
    pub right: u32,
    pub bottom: u32,
    pub top: u32,
}

impl VertexConfig {
    /// The configuration whose top label is fixed by conservation, if it is
    /// nonnegative.
    pub fn from_conservation(left: u32, bottom: u32, right: u32) -> Option<Self> {
        (left + bottom).checked_sub(right).map(|top| VertexConfig { left, right, bottom, top })
    }

    /// Horizontal labels in `{0, 1}`, conservation, and vertical labels at
    /// most `bound` when one is given.
    pub fn is_valid(&self, bound: Option<u32>) -> bool {
        self.left <= 1
            && self.right <= 1
            && self.left + self.bottom == self.right + self.top
            && bound.is_none_or(|l| self.bottom <= l && self.top <= l)
    }

    /// `f^(l)(c, u)`; zero for configurations outside the four vertex types.
    pub fn weight(&self, l: &MPoly, u: &MPoly, hbar: &MPoly) -> MPoly {
        let vars = u.vars();
        if !self.is_valid(None) {
            return MPoly::zero(vars);
        }
        let m = MPoly::from_int(vars, self.bottom as i64);
        let two_m = &m + &m;
        let shift = &(l - &two_m) * hbar;
        match (self.left, self.right) {
            (0, 0) => u - &shift,
            (1, 1) => u + &shift,
            (0, 1) => &two_m * hbar,
            _ => &(&(l - &m) + &(l - &m)) * hbar,
        }
    }
}

/// A state of the lattice model. `vertical[i][j]` is the label on the
/// vertical edge of column `j` just below row `i` (row 0 is the North
/// boundary, row `v` the South one).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeState {
    pub boundary: FixedPoint,
    pub vertical: Vec<Vec<u32>>,
}

impl LatticeState {
    pub fn v(&self) -> usize {
        self.vertical.len() - 1
    }

    pub fn w(&self) -> usize {
        self.boundary.w()
    }

    /// Horizontal labels, `v x (w + 1)`, starting from the West boundary.
    /// Entries violating conservation come out negative.
    pub fn horizontal(&self) -> Vec<Vec<i64>> {
        (1..=self.v())
            .map(|i| {
                let mut row = vec![1i64];
                for j in 0..self.w() {
                    let left = row[j];
                    row.push(left + self.vertical[i][j] as i64 - self.vertical[i - 1][j] as i64);
                }
                row
            })
            .collect()
    }

    /// Configuration around vertex `(i, j)`, both 0-based.
    pub fn vertex(&self, i: usize, j: usize) -> VertexConfig {
        let h = self.horizontal();
        VertexConfig {
            left: h[i][j].max(0) as u32,
            right: h[i][j + 1].max(0) as u32,
            bottom: self.vertical[i + 1][j],
            top: self.vertical[i][j],
        }
    }

    /// All vertex configurations, row by row.
    pub fn vertices(&self) -> Vec<Vec<VertexConfig>> {
        let h = self.horizontal();
        (0..self.v())
            .map(|i| {
                (0..self.w())
                    .map(|j| VertexConfig {
                        left: h[i][j].max(0) as u32,
                        right: h[i][j + 1].max(0) as u32,
                        bottom: self.vertical[i + 1][j],
                        top: self.vertical[i][j],
                    })
                    .collect()
            })
            .collect()
    }

    /// Checks the four state conditions against the profile.
    pub fn validate(&self, profile: &SpinProfile) -> Result<()> {
        let bad = |msg: String| Err(LatticeError::State(msg));
        let (v, w) = (self.v(), self.w());
        if profile.w() != w || self.vertical.iter().any(|r| r.len() != w) {
            return bad(format!("grid width does not match w = {}", profile.w()));
        }
        if self.vertical[0] != self.boundary.0 {
            return bad("North labels differ from the boundary".into());
        }
        if self.vertical[v].iter().any(|&x| x != 0) {
            return bad("South labels must be 0".into());
        }
        for (i, row) in self.vertical.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x > profile.bound(j, v as u32) {
                    return bad(format!("vertical label {x} at ({i}, {}) exceeds the spin", j + 1));
                }
            }
        }
        for (i, row) in self.horizontal().iter().enumerate() {
            if let Some(j) = row.iter().position(|&h| !(0..=1).contains(&h)) {
                return bad(format!("horizontal label {} at row {}, edge {j}", row[j], i + 1));
            }
            if row[w] != 0 {
                return bad(format!("East label of row {} is not 0", i + 1));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "v": self.v(),
            "w": self.w(),
            "boundary": self.boundary.0,
            "vertical": self.vertical,
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = || LatticeError::State(format!("malformed state dump: {value}"));
        let labels = |v: &Value| -> Option<Vec<u32>> {
            v.as_array()?.iter().map(|x| x.as_u64().map(|x| x as u32)).collect()
        };
        let boundary = labels(value.get("boundary").ok_or_else(bad)?).ok_or_else(bad)?;
        let vertical = value
            .get("vertical")
            .and_then(Value::as_array)
            .ok_or_else(bad)?
            .iter()
            .map(labels)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(bad)?;
        let state = LatticeState { boundary: FixedPoint(boundary), vertical };
        let dims_ok = value.get("v").and_then(Value::as_u64) == Some(state.v() as u64)
            && value.get("w").and_then(Value::as_u64) == Some(state.w() as u64);
        if state.vertical.is_empty() || !dims_ok {
            return Err(bad());
        }
        Ok(state)
    }

    /// ASCII picture with `---` for occupied horizontal edges, `...` for
    /// empty ones, `|` for a single vertical path, digits for multiple paths
    /// and `.` for empty vertical edges.
    pub fn render_ascii(&self) -> String {
        const PAD: usize = 6;
        let vchar = |x: u32| match x {
            0 => '.',
            1 => '|',
            k => char::from_digit(k, 36).unwrap_or('#'),
        };
        let vertical_line = |i: usize| {
            let mut s = " ".repeat(PAD);
            for &x in &self.vertical[i] {
                s.push_str("   ");
                s.push(vchar(x));
            }
            s
        };
        let h = self.horizontal();
        let mut lines = vec![vertical_line(0)];
        for (i, row) in h.iter().enumerate().take(self.v()) {
            let mut s = format!("{:<PAD$}", format!("y_{}", i + 1));
            for (j, &x) in row.iter().enumerate() {
                s.push_str(if x == 1 { "---" } else { "..." });
                if j < self.w() {
                    s.push('+');
                }
            }
            lines.push(s);
            lines.push(vertical_line(i + 1));
        }
        let mut s = " ".repeat(PAD);
        for j in 0..self.w() {
            s.push_str(&format!("{:>4}", format!("z_{}", j + 1)));
        }
        lines.push(s.trim_end().to_string());
        lines.join("\n")
    }
}

/// All states with the given North boundary, columns filled left to right
/// and each column top to bottom, choosing the lower label first.
pub fn enumerate_states(profile: &SpinProfile, v: u32, boundary: &FixedPoint) -> Result<Vec<LatticeState>> {
    if boundary.w() != profile.w() || !profile.contains(boundary) || boundary.total() != v {
        return Err(LatticeError::Boundary(format!("{boundary} is not a fixed point of {profile} at v = {v}")));
    }
    let (v, w) = (v as usize, profile.w());
    let mut grid = vec![vec![0u32; w]; v + 1];
    grid[0] = boundary.0.clone();
    let mut out = Vec::new();
    fill(profile, &mut grid, &mut vec![1; v], &mut vec![0; v], 0, 0, &mut out, boundary);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn fill(
    profile: &SpinProfile,
    grid: &mut Vec<Vec<u32>>,
    left: &mut Vec<u32>,
    right: &mut Vec<u32>,
    j: usize,
    i: usize,
    out: &mut Vec<LatticeState>,
    boundary: &FixedPoint,
) {
    let (v, w) = (left.len(), profile.w());
    if j == w {
        out.push(LatticeState { boundary: boundary.clone(), vertical: grid.clone() });
        return;
    }
    if i == v {
        // East boundary: no path may leave the last column sideways.
        if j + 1 == w && right.iter().any(|&r| r != 0) {
            return;
        }
        let mut next_left = right.clone();
        let mut next_right = vec![0; v];
        fill(profile, grid, &mut next_left, &mut next_right, j + 1, 0, out, boundary);
        return;
    }
    let bound = profile.bound(j, v as u32);
    for r in 0..=1u32 {
        // Going down the column: right + top = left + bottom fixes the label below.
        let Some(below) = (r + grid[i][j]).checked_sub(left[i]) else {
            continue;
        };
        if below > bound || (i + 1 == v && below != 0) {
            continue;
        }
        grid[i + 1][j] = below;
        right[i] = r;
        fill(profile, grid, left, right, j, i + 1, out, boundary);
    }
    grid[i + 1][j] = 0;
    right[i] = 0;
}
