use std::sync::Arc;

use faer::{c64, Mat, MatRef};

use crate::error::{LinopError, Result};
use crate::operator::{norm_fro, LinearOperator};
use crate::space::SpaceTag;

/// Default certification tolerance for projections.
pub const PROJECTION_TOL: f64 = 1e-9;

/// Orthogonal projection certified by Frobenius-norm defects, which bound the
/// operator-norm defects from above.
#[derive(Debug, Clone)]
pub struct Projection {
    op: LinearOperator,
    tol: f64,
}

impl Projection {
    /// Checks idempotence and hermiticity against `tol`.
    pub fn new(op: LinearOperator, tol: f64) -> Result<Self> {
        op.require_square()?;
        let m = op.mat();
        let sq = m * m;
        let idempotence = norm_fro((&sq - m).as_ref());
        let hermiticity = norm_fro((m - m.adjoint()).as_ref());
        if idempotence > tol || hermiticity > tol {
            return Err(LinopError::NotProjection {
                idempotence,
                hermiticity,
                tol,
            });
        }
        Ok(Self { op, tol })
    }

    /// `W W*` for a matrix with orthonormal columns; the recorded tolerance is
    /// the measured orthonormality defect of `W`.
    pub fn from_orthonormal_columns(space: Arc<SpaceTag>, w: Mat<c64>) -> Result<Self> {
        if w.nrows() != space.dim() {
            return Err(LinopError::ShapeMismatch {
                expected: (space.dim(), w.ncols()),
                found: (w.nrows(), w.ncols()),
            });
        }
        let gram = w.adjoint() * &w;
        let r = w.ncols();
        let defect = norm_fro((&gram - Mat::<c64>::identity(r, r)).as_ref());
        let mut p = &w * w.adjoint();
        let n = p.nrows();
        for j in 0..n {
            for i in 0..j {
                let z = (p[(i, j)] + p[(j, i)].conj()) * 0.5;
                p[(i, j)] = z;
                p[(j, i)] = z.conj();
            }
            p[(j, j)] = c64::new(p[(j, j)].re, 0.0);
        }
        let op = LinearOperator::on(space, p)?;
        Ok(Self {
            op,
            tol: defect.max(f64::EPSILON * (n.max(1) as f64)),
        })
    }

    pub(crate) fn from_parts(op: LinearOperator, tol: f64) -> Self {
        Self { op, tol }
    }

    /// Diagonal 0/1 projection.
    pub fn coordinate(space: Arc<SpaceTag>, keep: impl Fn(usize) -> bool) -> Self {
        let n = space.dim();
        let d: Vec<c64> = (0..n)
            .map(|i| c64::new(if keep(i) { 1.0 } else { 0.0 }, 0.0))
            .collect();
        Self {
            op: LinearOperator::diagonal(space, &d).expect("dimension matches"),
            tol: 0.0,
        }
    }

    pub fn op(&self) -> &LinearOperator {
        &self.op
    }

    pub fn mat(&self) -> MatRef<'_, c64> {
        self.op.mat()
    }

    pub fn space(&self) -> &Arc<SpaceTag> {
        self.op.domain()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// `1 − P`.
    pub fn complement(&self) -> Self {
        let n = self.op.nrows();
        let m = Mat::<c64>::identity(n, n) - self.op.mat();
        Self {
            op: LinearOperator::on(self.space().clone(), m).expect("square"),
            tol: self.tol,
        }
    }

    /// Trace rounded to the nearest integer.
    pub fn rank(&self) -> usize {
        let t = self.op.trace().expect("square");
        t.re.round().max(0.0) as usize
    }

    /// Orthonormal basis of the range from the eigendecomposition of `P`.
    pub fn range_basis(&self) -> Result<Mat<c64>> {
        let m = self.op.mat();
        let sym = Mat::from_fn(m.nrows(), m.ncols(), |i, j| {
            (m[(i, j)] + m[(j, i)].conj()) * 0.5
        });
        let e = crate::spectral::hermitian_eig(&LinearOperator::on(self.space().clone(), sym)?)?;
        let q = e.vectors.mat();
        let keep: Vec<usize> = (0..e.values.len()).filter(|&k| e.values[k] > 0.5).collect();
        Ok(Mat::from_fn(q.nrows(), keep.len(), |i, j| q[(i, keep[j])]))
    }
}
