use std::sync::Arc;

use conelab_linop::faer::Mat;
use conelab_linop::{c64, norm_fro, thin_svd, LinearOperator, SpaceTag, RANK_TOL};

use crate::error::{ResolutionError, Result};

/// The unitary `U = (1/√2)[[1, −(A*A)^{−1/2}A*], [(AA*)^{−1/2}A, 1]]` on `E ⊕ R`
/// for an invertible `A: E → R`, together with the block form of `UVU⁻¹`.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub unitary: LinearOperator,
    /// `V = [[0, A*], [A, 0]]`.
    pub antidiagonal: LinearOperator,
    /// `diag(−(A*A)^{1/2}, (AA*)^{1/2})`.
    pub diagonal: LinearOperator,
}

impl Reduction {
    /// `‖U*U − 1‖`.
    pub fn unitarity_defect(&self) -> f64 {
        let u = self.unitary.mat();
        let n = u.nrows();
        norm_fro((u.adjoint() * u - Mat::<c64>::identity(n, n)).as_ref())
    }

    /// `‖UVU⁻¹ − diag(−(A*A)^{1/2}, (AA*)^{1/2})‖`.
    pub fn block_defect(&self) -> f64 {
        let u = self.unitary.mat();
        let v = self.antidiagonal.mat();
        norm_fro((u * v * u.adjoint() - self.diagonal.mat()).as_ref())
    }
}

pub fn reduction_unitary(a: &LinearOperator) -> Result<Reduction> {
    let (r, e) = (a.nrows(), a.ncols());
    if r != e {
        return Err(ResolutionError::NotInvertibleRestriction { min_singular: 0.0 });
    }
    let svd = thin_svd(a)?;
    let smax = svd.s.first().copied().unwrap_or(0.0);
    let smin = svd.s.last().copied().unwrap_or(0.0);
    if e > 0 && smin <= RANK_TOL * smax.max(1.0) {
        return Err(ResolutionError::NotInvertibleRestriction { min_singular: smin });
    }
    // A = UΣV*: (A*A)^{−1/2}A* = VU*, (AA*)^{−1/2}A = UV*.
    let (su, sv) = (&svd.u, &svd.v);
    let w = su * sv.adjoint();
    let abs_a = Mat::from_fn(e, e, |i, j| {
        (0..e)
            .map(|k| sv[(i, k)] * svd.s[k] * sv[(j, k)].conj())
            .sum::<c64>()
    });
    let abs_a_star = Mat::from_fn(r, r, |i, j| {
        (0..r)
            .map(|k| su[(i, k)] * svd.s[k] * su[(j, k)].conj())
            .sum::<c64>()
    });
    let n = e + r;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut u = Mat::<c64>::zeros(n, n);
    let mut v = Mat::<c64>::zeros(n, n);
    let mut dg = Mat::<c64>::zeros(n, n);
    for i in 0..e {
        u[(i, i)] = c64::new(h, 0.0);
        u[(e + i, e + i)] = c64::new(h, 0.0);
    }
    for i in 0..r {
        for j in 0..e {
            u[(e + i, j)] = w[(i, j)] * h;
            u[(j, e + i)] = -w[(i, j)].conj() * h;
            v[(e + i, j)] = a.mat()[(i, j)];
            v[(j, e + i)] = a.mat()[(i, j)].conj();
        }
    }
    for i in 0..e {
        for j in 0..e {
            dg[(i, j)] = -abs_a[(i, j)];
            dg[(e + i, e + j)] = abs_a_star[(i, j)];
        }
    }
    let space = Arc::new(SpaceTag::direct_sum(
        "E⊕R",
        &[a.domain().as_ref(), a.codomain().as_ref()],
    ));
    Ok(Reduction {
        unitary: LinearOperator::on(space.clone(), u)?,
        antidiagonal: LinearOperator::on(space.clone(), v)?,
        diagonal: LinearOperator::on(space, dg)?,
    })
}
