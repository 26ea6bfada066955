use faer::{c64, Mat, MatRef};

use crate::operator::LinearOperator;

/// A square operator known through its action on blocks of column vectors.
pub trait Action: Send + Sync {
    fn dim(&self) -> usize;

    fn apply(&self, x: MatRef<'_, c64>) -> Mat<c64>;

    fn apply_adjoint(&self, x: MatRef<'_, c64>) -> Mat<c64>;

    fn to_dense(&self) -> Mat<c64> {
        let n = self.dim();
        self.apply(Mat::<c64>::identity(n, n).as_ref())
    }
}

impl Action for LinearOperator {
    fn dim(&self) -> usize {
        self.ncols()
    }

    fn apply(&self, x: MatRef<'_, c64>) -> Mat<c64> {
        self.mat() * x
    }

    fn apply_adjoint(&self, x: MatRef<'_, c64>) -> Mat<c64> {
        self.mat().adjoint() * x
    }

    fn to_dense(&self) -> Mat<c64> {
        self.mat().to_owned()
    }
}

/// Block-diagonal sum of actions.
pub struct BlockDiagonal<'a> {
    blocks: Vec<&'a dyn Action>,
}

impl<'a> BlockDiagonal<'a> {
    pub fn new(blocks: Vec<&'a dyn Action>) -> Self {
        Self { blocks }
    }

    fn run(&self, x: MatRef<'_, c64>, adjoint: bool) -> Mat<c64> {
        let mut out = Mat::zeros(x.nrows(), x.ncols());
        let mut off = 0;
        for b in &self.blocks {
            let d = b.dim();
            let xb = x.subrows(off, d);
            let yb = if adjoint {
                b.apply_adjoint(xb)
            } else {
                b.apply(xb)
            };
            out.as_mut().subrows_mut(off, d).copy_from(&yb);
            off += d;
        }
        out
    }
}

impl Action for BlockDiagonal<'_> {
    fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim()).sum()
    }

    fn apply(&self, x: MatRef<'_, c64>) -> Mat<c64> {
        self.run(x, false)
    }

    fn apply_adjoint(&self, x: MatRef<'_, c64>) -> Mat<c64> {
        self.run(x, true)
    }
}
