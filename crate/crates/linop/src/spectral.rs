use std::cmp::Ordering;

use faer::{c64, Mat, Side};

use crate::error::{LinopError, Result};
use crate::operator::{norm_fro, LinearOperator};
use crate::projection::Projection;

/// Relative hermiticity tolerance used when none is given.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Eigendecomposition `T = Q Λ Q*` of a Hermitian operator.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: LinearOperator,
}

fn hermitian_part(t: &LinearOperator, rel_tol: f64) -> Result<Mat<c64>> {
    t.require_square()?;
    let m = t.mat();
    let n = m.nrows();
    let defect = norm_fro((m - m.adjoint()).as_ref());
    let tol = rel_tol * norm_fro(m);
    if defect > tol {
        return Err(LinopError::NotHermitian { defect, tol });
    }
    Ok(Mat::from_fn(n, n, |i, j| {
        (m[(i, j)] + m[(j, i)].conj()) * 0.5
    }))
}

fn lex_cmp(a: faer::ColRef<'_, c64>, b: faer::ColRef<'_, c64>) -> Ordering {
    for i in 0..a.nrows() {
        let o = a[i]
            .re
            .total_cmp(&b[i].re)
            .then(a[i].im.total_cmp(&b[i].im));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

/// Rotates a column so its first entry of at least half the maximal modulus is real positive.
fn fix_phase(v: &mut Mat<c64>, j: usize) {
    let n = v.nrows();
    let mut big: f64 = 0.0;
    for i in 0..n {
        big = big.max(v[(i, j)].norm());
    }
    if big == 0.0 {
        return;
    }
    let pivot = (0..n).find(|&i| v[(i, j)].norm() >= 0.5 * big).unwrap_or(0);
    let z = v[(pivot, j)];
    let ph = z.conj() / z.norm();
    for i in 0..n {
        v[(i, j)] *= ph;
    }
}

/// Eigenvalues ascending; exact ties ordered lexicographically by eigenvector.
pub fn hermitian_eig(t: &LinearOperator) -> Result<HermitianEigen> {
    hermitian_eig_with(t, HERMITICITY_TOL)
}

pub fn hermitian_eig_with(t: &LinearOperator, rel_tol: f64) -> Result<HermitianEigen> {
    let h = hermitian_part(t, rel_tol)?;
    let n = h.nrows();
    if n == 0 {
        return Ok(HermitianEigen {
            values: Vec::new(),
            vectors: LinearOperator::identity(t.domain().clone()),
        });
    }
    let evd = h
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| LinopError::NoConvergence { dim: n })?;
    let s = evd.S();
    let mut u = evd.U().to_owned();
    for j in 0..n {
        fix_phase(&mut u, j);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        s[a].re
            .total_cmp(&s[b].re)
            .then_with(|| lex_cmp(u.col(a), u.col(b)))
    });
    let values = order.iter().map(|&k| s[k].re).collect();
    let q = Mat::from_fn(n, n, |i, j| u[(i, order[j])]);
    Ok(HermitianEigen {
        values,
        vectors: LinearOperator::on(t.domain().clone(), q)?,
    })
}

/// `Q f(Λ) Q*`.
pub fn spectral_function(t: &LinearOperator, f: impl Fn(f64) -> f64) -> Result<LinearOperator> {
    let e = hermitian_eig(t)?;
    let fv: Vec<f64> = e.values.iter().map(|&l| f(l)).collect();
    Ok(reassemble(&e, &fv, t))
}

pub(crate) fn reassemble(e: &HermitianEigen, fv: &[f64], t: &LinearOperator) -> LinearOperator {
    let q = e.vectors.mat();
    let n = q.nrows();
    let scaled = Mat::from_fn(n, n, |i, j| q[(i, j)] * fv[j]);
    let mut m = &scaled * q.adjoint();
    for j in 0..n {
        for i in 0..j {
            let z = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
        m[(j, j)] = c64::new(m[(j, j)].re, 0.0);
    }
    LinearOperator::on(t.domain().clone(), m).expect("shape preserved")
}

/// Projection onto eigenvalues above `zero_tol`, refusing eigenvalues of modulus
/// in `(zero_tol/4, 4·zero_tol)`.
pub fn positive_spectral_projection(t: &LinearOperator, zero_tol: f64) -> Result<Projection> {
    positive_spectral_projection_with(t, zero_tol, true)
}

pub fn positive_spectral_projection_with(
    t: &LinearOperator,
    zero_tol: f64,
    strict: bool,
) -> Result<Projection> {
    let e = hermitian_eig(t)?;
    if strict {
        if let Some(&l) = e
            .values
            .iter()
            .find(|l| l.abs() > zero_tol / 4.0 && l.abs() < zero_tol * 4.0)
        {
            return Err(LinopError::SpectralGapViolation {
                eigenvalue: l,
                zero_tol,
            });
        }
    }
    let q = e.vectors.mat();
    let keep: Vec<usize> = (0..e.values.len())
        .filter(|&k| e.values[k] > zero_tol)
        .collect();
    let w = Mat::from_fn(q.nrows(), keep.len(), |i, j| q[(i, keep[j])]);
    Projection::from_orthonormal_columns(t.domain().clone(), w)
}
