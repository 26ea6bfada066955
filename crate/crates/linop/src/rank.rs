use faer::{c64, Mat};

use crate::error::{LinopError, Result};
use crate::operator::LinearOperator;
use crate::projection::Projection;

/// Default relative rank tolerance.
pub const RANK_TOL: f64 = 1e-8;
/// Minimal ratio between the smallest kept and largest dropped singular value.
pub const MIN_GAP: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankDecision {
    pub rank: usize,
    pub kernel_dim: usize,
    pub cokernel_dim: usize,
    /// Smallest kept over largest dropped singular value; infinite if nothing was dropped.
    pub gap: f64,
    /// Relative tolerance as supplied.
    pub tol: f64,
    /// Absolute cut `tol · s_max`.
    pub threshold: f64,
}

impl RankDecision {
    pub fn index(&self) -> i64 {
        self.kernel_dim as i64 - self.cokernel_dim as i64
    }
}

/// Thin singular value decomposition `T = U diag(s) V*`, `s` descending.
#[derive(Debug, Clone)]
pub struct ThinSvd {
    pub u: Mat<c64>,
    pub s: Vec<f64>,
    pub v: Mat<c64>,
}

pub fn thin_svd(t: &LinearOperator) -> Result<ThinSvd> {
    let m = t.mat();
    let (r, c) = (m.nrows(), m.ncols());
    let k = r.min(c);
    if k == 0 {
        return Ok(ThinSvd {
            u: Mat::zeros(r, 0),
            s: Vec::new(),
            v: Mat::zeros(c, 0),
        });
    }
    let svd = m
        .thin_svd()
        .map_err(|_| LinopError::NoConvergence { dim: k })?;
    let s: Vec<f64> = (0..k).map(|i| svd.S()[i].re).collect();
    Ok(ThinSvd {
        u: svd.U().to_owned(),
        s,
        v: svd.V().to_owned(),
    })
}

pub fn singular_values(t: &LinearOperator) -> Result<Vec<f64>> {
    let m = t.mat();
    if m.nrows().min(m.ncols()) == 0 {
        return Ok(Vec::new());
    }
    m.singular_values().map_err(|_| LinopError::NoConvergence {
        dim: m.nrows().min(m.ncols()),
    })
}

pub(crate) fn decide(s: &[f64], rows: usize, cols: usize, tol: f64) -> RankDecision {
    let smax = s.first().copied().unwrap_or(0.0);
    let threshold = tol * smax;
    let rank = if smax > 0.0 {
        s.iter().filter(|&&x| x > threshold).count()
    } else {
        0
    };
    let gap = if rank < s.len() && rank > 0 {
        let dropped = s[rank];
        if dropped > 0.0 {
            s[rank - 1] / dropped
        } else {
            f64::INFINITY
        }
    } else {
        f64::INFINITY
    };
    RankDecision {
        rank,
        kernel_dim: cols - rank,
        cokernel_dim: rows - rank,
        gap,
        tol,
        threshold,
    }
}

/// Kernel and cokernel dimensions from singular values below `tol · s_max`.
pub fn fredholm_defect(t: &LinearOperator, tol: f64) -> Result<RankDecision> {
    let s = singular_values(t)?;
    let d = decide(&s, t.nrows(), t.ncols(), tol);
    if d.gap < MIN_GAP {
        return Err(LinopError::AmbiguousRank { gap: d.gap, tol });
    }
    Ok(d)
}

fn outer(w: &Mat<c64>, cols: std::ops::Range<usize>) -> Mat<c64> {
    let sub = w.subcols(cols.start, cols.end - cols.start);
    sub * sub.adjoint()
}

pub fn kernel_projection(t: &LinearOperator, tol: f64) -> Result<Projection> {
    let svd = thin_svd(t)?;
    let d = decide(&svd.s, t.nrows(), t.ncols(), tol);
    if d.gap < MIN_GAP {
        return Err(LinopError::AmbiguousRank { gap: d.gap, tol });
    }
    let n = t.ncols();
    let m = Mat::<c64>::identity(n, n) - outer(&svd.v, 0..d.rank);
    let op = LinearOperator::on(t.domain().clone(), m)?;
    Ok(Projection::from_parts(
        op,
        crate::projection::PROJECTION_TOL,
    ))
}

pub fn range_projection(t: &LinearOperator, tol: f64) -> Result<Projection> {
    let svd = thin_svd(t)?;
    let d = decide(&svd.s, t.nrows(), t.ncols(), tol);
    if d.gap < MIN_GAP {
        return Err(LinopError::AmbiguousRank { gap: d.gap, tol });
    }
    let w = svd.u.subcols(0, d.rank).to_owned();
    Projection::from_orthonormal_columns(t.codomain().clone(), w)
}
