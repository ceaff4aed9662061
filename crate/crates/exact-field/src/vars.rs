use std::fmt;
use std::sync::Arc;

use crate::error::{FieldError, Result};

/// Role a variable plays in a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarRole {
    /// The deformation parameter `hbar`.
    Deformation,
    /// A symbolic spin `l_j`.
    Spin,
    /// Framing (equivariant) parameter `z_j` or a spectral parameter.
    Framing,
    /// Chern root `y_i`.
    ChernRoot,
    /// Auxiliary variable such as the generating-series variable `u`.
    Auxiliary,
}

/// Ordered list of variable names. The position of a variable fixes its
/// significance in the monomial order: later variables are more significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarTable {
    names: Vec<String>,
    roles: Vec<VarRole>,
}

impl VarTable {
    pub fn new<S: AsRef<str>>(vars: &[(S, VarRole)]) -> Result<Arc<Self>> {
        let mut names = Vec::with_capacity(vars.len());
        let mut roles = Vec::with_capacity(vars.len());
        for (n, r) in vars {
            let n = n.as_ref().to_string();
            if names.contains(&n) {
                return Err(FieldError::ContextMismatch(format!("duplicate variable `{n}`")));
            }
            names.push(n);
            roles.push(*r);
        }
        Ok(Arc::new(VarTable { names, roles }))
    }

    /// Builds a table from names, inferring roles from the naming scheme
    /// (`hbar`, `l_j`, `z*`, `y_i`, anything else auxiliary).
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>> {
        let vars: Vec<(String, VarRole)> = names
            .iter()
            .map(|n| {
                let n = n.as_ref();
                let role = if n == "hbar" {
                    VarRole::Deformation
                } else if n.starts_with("l_") {
                    VarRole::Spin
                } else if n.starts_with('z') || n.starts_with('x') {
                    VarRole::Framing
                } else if n.starts_with("y_") {
                    VarRole::ChernRoot
                } else {
                    VarRole::Auxiliary
                };
                (n.to_string(), role)
            })
            .collect();
        Self::new(&vars)
    }

    /// The standard context `hbar < l_1..l_w < z_1..z_w < y_1..y_v < extra..`.
    /// Spin symbols are included only when `symbolic_spins` is set.
    pub fn standard(w: usize, v: usize, symbolic_spins: bool, extra: &[&str]) -> Arc<Self> {
        let mut names = vec!["hbar".to_string()];
        if symbolic_spins {
            names.extend((1..=w).map(|j| format!("l_{j}")));
        }
        names.extend((1..=w).map(|j| format!("z_{j}")));
        names.extend((1..=v).map(|i| format!("y_{i}")));
        names.extend(extra.iter().map(|s| s.to_string()));
        Self::from_names(&names).expect("standard variable names are unique")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn role(&self, i: usize) -> VarRole {
        self.roles[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index(name)
            .ok_or_else(|| FieldError::ContextMismatch(format!("unknown variable `{name}`")))
    }
}

impl fmt::Display for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(", "))
    }
}

pub(crate) fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
