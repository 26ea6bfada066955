use std::num::NonZeroUsize;

use conelab_linop::faer::linalg::solvers::DenseSolveCore;
use conelab_linop::faer::Mat;
use conelab_linop::{c64, hermitian_eig, LinearOperator};
use gauss_quad::legendre::GaussLegendre;

use crate::error::{ResolutionError, Result};

/// Node count of the quadrature cross-check.
pub const DEFAULT_NODES: usize = 200;

/// `(1 + Δ)^{−1/2} = (1/π)∫₀^∞ λ^{−1/2}(1 + Δ + λ)^{−1} dλ`, with
/// `λ = u²/(1−u)²` mapping the half-line to `[0, 1)`:
/// `(2/π)∫₀¹ ((1−u)²(1+Δ) + u²)^{−1} du`, evaluated by Gauss–Legendre.
pub fn inverse_sqrt_quadrature(delta: &LinearOperator, nodes: usize) -> Result<LinearOperator> {
    let e = hermitian_eig(delta)?;
    let scale = e.values.iter().fold(1.0f64, |m, l| m.max(l.abs()));
    if let Some(&l) = e.values.first() {
        if l < -1e-10 * scale {
            return Err(ResolutionError::NotPsd { eigenvalue: l });
        }
    }
    let n = delta.nrows();
    let rule = GaussLegendre::new(NonZeroUsize::new(nodes.max(1)).expect("positive"));
    let mut acc = Mat::<c64>::zeros(n, n);
    for &(x, w) in rule.as_node_weight_pairs() {
        let u = 0.5 * (x + 1.0);
        let a = (1.0 - u) * (1.0 - u);
        let m = Mat::from_fn(n, n, |i, j| {
            let base = delta.mat()[(i, j)] * a;
            if i == j {
                base + c64::new(a + u * u, 0.0)
            } else {
                base
            }
        });
        let inv = m.partial_piv_lu().inverse();
        // du = dx/2 on [0, 1].
        let coef = w / std::f64::consts::PI;
        for j in 0..n {
            for i in 0..n {
                acc[(i, j)] += inv[(i, j)] * coef;
            }
        }
    }
    Ok(LinearOperator::on(delta.domain().clone(), acc)?)
}
