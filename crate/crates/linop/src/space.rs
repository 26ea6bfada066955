use std::collections::HashSet;
use std::fmt;

use crate::error::{LinopError, Result};

/// Identifies one basis vector of a truncated space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    Index(i64),
    Sheet(i32, i64),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Index(n) => write!(f, "{n}"),
            BasisLabel::Sheet(s, n) => write!(f, "({s},{n})"),
        }
    }
}

/// A named finite-dimensional space with labelled basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceTag {
    name: String,
    labels: Vec<BasisLabel>,
}

impl SpaceTag {
    pub fn new(name: impl Into<String>, labels: Vec<BasisLabel>) -> Result<Self> {
        let name = name.into();
        let mut seen = HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(*l) {
                return Err(LinopError::DuplicateLabel {
                    space: name,
                    label: l.to_string(),
                });
            }
        }
        Ok(Self { name, labels })
    }

    /// Space whose labels are `0..dim`.
    pub fn indexed(name: impl Into<String>, dim: usize) -> Self {
        Self {
            name: name.into(),
            labels: (0..dim as i64).map(BasisLabel::Index).collect(),
        }
    }

    /// Space of Fourier modes `-n..=n`.
    pub fn modes(name: impl Into<String>, n: usize) -> Self {
        let n = n as i64;
        Self {
            name: name.into(),
            labels: (-n..=n).map(BasisLabel::Index).collect(),
        }
    }

    /// Direct sum; labels of summand `k` become `Sheet(k, n)`, with `n` the
    /// original index or, for sheet-labelled summands, the position.
    pub fn direct_sum(name: impl Into<String>, parts: &[&SpaceTag]) -> Self {
        let mut labels = Vec::new();
        for (k, p) in parts.iter().enumerate() {
            for (i, l) in p.labels.iter().enumerate() {
                let n = match l {
                    BasisLabel::Index(n) => *n,
                    BasisLabel::Sheet(..) => i as i64,
                };
                labels.push(BasisLabel::Sheet(k as i32, n));
            }
        }
        Self {
            name: name.into(),
            labels,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn position(&self, label: BasisLabel) -> Option<usize> {
        self.labels.iter().position(|l| *l == label)
    }
}
