use std::fmt;

use crate::{FixedPointError, Result};

/// Permutation of `{0, .., w-1}` stored in one-line notation, `images[i] = s(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(w: usize) -> Self {
        Permutation { images: (0..w).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(FixedPointError::Permutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based one-line notation such as `2,1,3`, or `id`.
    pub fn parse(text: &str, w: usize) -> Result<Self> {
        let text = text.trim();
        if text == "id" {
            return Ok(Self::identity(w));
        }
        let digits: Vec<&str> = if text.contains(',') {
            text.split(',').map(str::trim).collect()
        } else {
            text.split("").filter(|s| !s.is_empty()).collect()
        };
        let mut images = Vec::with_capacity(digits.len());
        for d in digits {
            let k: usize = d.parse().map_err(|_| FixedPointError::Permutation(format!("bad entry `{d}` in `{text}`")))?;
            if k == 0 {
                return Err(FixedPointError::Permutation("entries are 1-based".into()));
            }
            images.push(k - 1);
        }
        if images.len() != w {
            return Err(FixedPointError::Permutation(format!("`{text}` does not have {w} entries")));
        }
        Self::from_images(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &s)| i == s)
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &s) in self.images.iter().enumerate() {
            inv[s] = i;
        }
        Permutation { images: inv }
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    /// `(x_{s^-1(0)}, .., x_{s^-1(w-1)})`.
    pub fn reorder<T: Clone>(&self, x: &[T]) -> Vec<T> {
        let inv = self.inverse();
        inv.images.iter().map(|&i| x[i].clone()).collect()
    }

    /// All permutations of `w` elements in lexicographic order of one-line notation.
    pub fn all(w: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            if prefix.len() == used.len() {
                out.push(Permutation { images: prefix.clone() });
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    prefix.push(i);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; w], &mut out);
        out
    }

    /// 1-based one-line notation, e.g. `213`, or `id`.
    pub fn label(&self) -> String {
        if self.is_identity() {
            return "id".into();
        }
        let sep = if self.len() > 9 { "," } else { "" };
        self.images.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(sep)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}
