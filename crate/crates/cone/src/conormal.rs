use conelab_circle::{coefficients_of, Toeplitz};
use conelab_linop::faer::Mat;
use conelab_linop::{c64, Action, LinearOperator};

use crate::geometry::ConeGeometry;
use crate::profile::{inverse_warped_frequency, warped_frequency};
use crate::rational::{ConormalFamily, RationalSymbol};

/// Symbol on the dual circle: `θ ↦ A(p(θ))` for the warped frequency `p`.
pub fn dual_symbol(a: &RationalSymbol, h: f64, theta: f64) -> c64 {
    let theta = (theta + std::f64::consts::PI).rem_euclid(2.0 * std::f64::consts::PI)
        - std::f64::consts::PI;
    if theta.abs() <= 0.5 * std::f64::consts::PI {
        a.eval(warped_frequency(theta, h))
    } else {
        a.eval_inverse(inverse_warped_frequency(theta, h))
    }
}

/// Translation-invariant operator `A(−i∂/∂t)` on one sheet of the cylinder
/// window: a Toeplitz matrix with kernel `K_m = (1/2π)∫ A(p(θ)) e^{imθ} dθ`.
pub fn sheet_conormal(a: &RationalSymbol, geo: &ConeGeometry) -> Toeplitz {
    let n = geo.sheet_dim();
    let max = n - 1;
    let c = coefficients_of(|theta| dual_symbol(a, geo.h(), theta), max);
    Toeplitz::new(n, |m| c[(max as i64 - m) as usize])
}

/// `𝐀(−i∂/∂t)` on `L²(C_Ω)`, block-diagonal over the two sheets.
pub fn conormal_operator(c: &ConormalFamily, geo: &ConeGeometry) -> LinearOperator {
    let n = geo.sheet_dim();
    let mut mat = Mat::<c64>::zeros(2 * n, 2 * n);
    for (block, a) in [&c.plus, &c.minus].into_iter().enumerate() {
        let t = sheet_conormal(a, geo);
        mat.as_mut()
            .submatrix_mut(block * n, block * n, n, n)
            .copy_from(t.to_dense());
    }
    LinearOperator::on(geo.cylinder_space().clone(), mat).expect("cylinder dimension")
}
