use std::sync::Arc;

use conelab_circle::{multiplication_operator_fn, CircleFunction, CircleTruncation};
use conelab_linop::faer::{Mat, MatRef};
use conelab_linop::{c64, BasisLabel, LinearOperator, SpaceTag};

use crate::error::Result;

/// `L²(S¹) ⊗ ℂ^d` truncated to modes `−N..=N`, with the circle algebra acting
/// on the first factor. Basis label `Sheet(k, m)` is mode `m` of component `k`.
#[derive(Debug, Clone)]
pub struct HilbertModule {
    truncation: CircleTruncation,
    multiplicity: usize,
    space: Arc<SpaceTag>,
}

impl HilbertModule {
    pub fn new(name: &str, truncation: &CircleTruncation, multiplicity: usize) -> Self {
        let labels = (0..multiplicity)
            .flat_map(|k| {
                (0..truncation.dim()).map(move |i| BasisLabel::Sheet(k as i32, truncation.mode(i)))
            })
            .collect();
        let space = SpaceTag::new(name, labels).expect("labels are distinct");
        Self {
            truncation: truncation.clone(),
            multiplicity,
            space: Arc::new(space),
        }
    }

    pub fn truncation(&self) -> &CircleTruncation {
        &self.truncation
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn space(&self) -> &Arc<SpaceTag> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `M_f ⊗ 1`.
    pub fn act(&self, f: &CircleFunction) -> LinearOperator {
        let m = multiplication_operator_fn(f, &self.truncation);
        let b = self.truncation.dim();
        let mut out = Mat::<c64>::zeros(self.dim(), self.dim());
        for k in 0..self.multiplicity {
            out.as_mut()
                .submatrix_mut(k * b, k * b, b, b)
                .copy_from(m.mat());
        }
        LinearOperator::on(self.space.clone(), out).expect("square")
    }

    /// Map to `target` acting as `weight(m)·X₊` on modes `m ≥ 0` and as
    /// `weight(m)·X₋` on modes `m < 0`.
    pub fn mode_map(
        &self,
        target: &HilbertModule,
        plus: MatRef<'_, c64>,
        minus: MatRef<'_, c64>,
        weight: impl Fn(i64) -> f64,
    ) -> Result<LinearOperator> {
        let b = self.truncation.dim();
        let mut out = Mat::<c64>::zeros(target.dim(), self.dim());
        for i in 0..target.multiplicity {
            for j in 0..self.multiplicity {
                for p in 0..b {
                    let mode = self.truncation.mode(p);
                    let x = if mode >= 0 {
                        plus[(i, j)]
                    } else {
                        minus[(i, j)]
                    };
                    out[(i * b + p, j * b + p)] = x * weight(mode);
                }
            }
        }
        Ok(LinearOperator::new(
            self.space.clone(),
            target.space.clone(),
            out,
        )?)
    }

    /// `P₊ ⊗ 1`, the projection onto modes `m ≥ 0`.
    pub fn hardy_plus(&self) -> LinearOperator {
        let id = Mat::<c64>::identity(self.multiplicity, self.multiplicity);
        let zero = Mat::<c64>::zeros(self.multiplicity, self.multiplicity);
        self.mode_map(self, id.as_ref(), zero.as_ref(), |_| 1.0)
            .expect("same module")
    }

    /// `P₋ ⊗ 1`.
    pub fn hardy_minus(&self) -> LinearOperator {
        let id = Mat::<c64>::identity(self.multiplicity, self.multiplicity);
        let zero = Mat::<c64>::zeros(self.multiplicity, self.multiplicity);
        self.mode_map(self, zero.as_ref(), id.as_ref(), |_| 1.0)
            .expect("same module")
    }
}

/// Direct sum of modules with the action applied blockwise.
pub fn direct_sum_space(modules: &[HilbertModule]) -> Arc<SpaceTag> {
    let parts: Vec<&SpaceTag> = modules.iter().map(|m| m.space().as_ref()).collect();
    Arc::new(SpaceTag::direct_sum("H", &parts))
}

/// Block-diagonal action of `f` on `⊕ H_j`.
pub fn diagonal_action(
    modules: &[HilbertModule],
    space: &Arc<SpaceTag>,
    f: &CircleFunction,
) -> LinearOperator {
    let n = space.dim();
    let mut out = Mat::<c64>::zeros(n, n);
    let mut off = 0;
    for m in modules {
        let d = m.dim();
        out.as_mut()
            .submatrix_mut(off, off, d, d)
            .copy_from(m.act(f).mat());
        off += d;
    }
    LinearOperator::on(space.clone(), out).expect("square")
}

/// Offsets of each summand in `⊕ H_j`.
pub fn offsets(modules: &[HilbertModule]) -> Vec<usize> {
    let mut v = Vec::with_capacity(modules.len() + 1);
    let mut off = 0;
    for m in modules {
        v.push(off);
        off += m.dim();
    }
    v.push(off);
    v
}
