use std::f64::consts::PI;

use conelab_circle::{coefficients_of, Toeplitz};
use conelab_linop::faer::Mat;
use conelab_linop::{c64, Action, LinearOperator};

use crate::cutoffs::CutoffSystem;
use crate::error::{ConeError, Result};
use crate::geometry::{ConeGeometry, SHEET_OMEGA_MINUS, SHEET_OMEGA_PLUS, SHEET_XI_MINUS};

/// Multiplication by a function of `σ` on the double, as a Toeplitz matrix on modes `−N..=N`.
pub fn double_multiplication(geo: &ConeGeometry, f: impl Fn(f64) -> c64) -> Toeplitz {
    let d = geo.double_dim();
    let max = d - 1;
    let c = coefficients_of(|theta| f(geo.sigma_of_angle(theta)), max);
    Toeplitz::new(d, |m| c[(m + max as i64) as usize])
}

/// `(F E)` restricted to the manifold points lying in copy 1 of the double:
/// column `c` is the unitary DFT of the unit vector at `positions[c]`.
pub(crate) fn dft_columns(geo: &ConeGeometry, positions: &[usize]) -> Result<Mat<c64>> {
    let d = geo.double_dim();
    let n = geo.n() as i64;
    let norm = 1.0 / (d as f64).sqrt();
    let mut js = Vec::with_capacity(positions.len());
    for &p in positions {
        let q = geo.double_position(p).ok_or_else(|| {
            ConeError::GridMismatch(format!(
                "manifold point {p} is outside copy 1 of the double"
            ))
        })?;
        js.push(q as i64 - n);
    }
    Ok(Mat::from_fn(d, positions.len(), |r, c| {
        let mode = r as i64 - n;
        let phase = -2.0 * PI * ((mode * js[c]).rem_euclid(d as i64)) as f64 / d as f64;
        c64::from_polar(norm, phase)
    }))
}

pub(crate) fn check_cutoffs(geo: &ConeGeometry, cs: &CutoffSystem) -> Result<()> {
    if cs.len() != geo.manifold_dim() {
        return Err(ConeError::GridMismatch(format!(
            "cutoffs have {} samples, manifold grid has {}",
            cs.len(),
            geo.manifold_dim()
        )));
    }
    Ok(())
}

/// `Γφ = ψ·T(χ₂φ) ⊕ χ₁φ` from `L²(M)` to the ambient space.
pub fn pseudo_guillemin(geo: &ConeGeometry, cs: &CutoffSystem) -> Result<LinearOperator> {
    check_cutoffs(geo, cs)?;
    let dim_m = geo.manifold_dim();
    let d = geo.double_dim();
    let n = geo.n();
    let interior: Vec<usize> = (0..dim_m).filter(|&p| cs.chi2[p] != 0.0).collect();
    let x = dft_columns(geo, &interior)?;
    let psi = double_multiplication(geo, |sigma| {
        c64::new(CutoffSystem::psi_of_t(geo.double_t(sigma)), 0.0)
    });
    let mut plus = Mat::<c64>::zeros(d, interior.len());
    let mut minus = Mat::<c64>::zeros(d, interior.len());
    for (c, &p) in interior.iter().enumerate() {
        for r in 0..d {
            let v = x[(r, c)] * cs.chi2[p];
            if r >= n {
                plus[(r, c)] = v;
            } else {
                minus[(r, c)] = v;
            }
        }
    }
    let plus = psi.apply(plus.as_ref());
    let minus = psi.apply(minus.as_ref());

    let mut g = Mat::<c64>::zeros(geo.ambient_dim(), dim_m);
    let off_minus = geo.ambient_offset(SHEET_XI_MINUS);
    for (c, &p) in interior.iter().enumerate() {
        for r in 0..d {
            g[(r, p)] = plus[(r, c)];
            g[(off_minus + r, p)] = minus[(r, c)];
        }
    }
    for p in 0..dim_m {
        if cs.chi1[p] == 0.0 {
            continue;
        }
        let (omega, k) = geo
            .cylinder_position(p)
            .expect("χ₁ vanishes at the middle of M");
        let sheet = if omega > 0 {
            SHEET_OMEGA_PLUS
        } else {
            SHEET_OMEGA_MINUS
        };
        let row = geo.ambient_offset(sheet) + (k - geo.k_min()) as usize;
        g[(row, p)] = c64::new(cs.chi1[p], 0.0);
    }
    Ok(LinearOperator::new(
        geo.manifold_space().clone(),
        geo.ambient_space().clone(),
        g,
    )?)
}
