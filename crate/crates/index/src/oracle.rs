use conelab_cone::{ConeSymbol, RationalSymbol};
use conelab_linop::c64;

use crate::error::{IndexError, Result};
use crate::winding::{winding_number, winding_of};

/// Orientation of the interior contribution: the circle shift has index −1.
pub const INTERIOR_ORIENTATION: i64 = -1;
/// Orientation of the conormal contribution: the Wiener–Hopf operator of
/// `(p − i)/(p + i)` on the half-line has kernel `e^{−t}` and no cokernel.
pub const CONORMAL_ORIENTATION: i64 = 1;

/// Winding of a rational conormal symbol over the compactified real line.
pub fn conormal_winding(a: &RationalSymbol) -> Result<i64> {
    let mut count = 1024;
    loop {
        match winding_number(&a.loop_samples(count)) {
            Err(IndexError::UnderSampled { .. }) if count < 1 << 22 => count *= 2,
            r => return r,
        }
    }
}

/// Independent index oracle for a cone symbol from winding data:
/// `−wind(a₊/a₋)` along `M°` plus `Σ_ω wind(A_ω)`.
pub fn cone_index_oracle(a: &ConeSymbol) -> Result<i64> {
    if !a.is_elliptic() {
        return Err(IndexError::NotElliptic {
            min_modulus: a.min_modulus(),
        });
    }
    let limit = a.stabilized(true);
    if limit.norm() < 1e-12 {
        return Err(IndexError::NotFactorized(
            "stabilized value vanishes".to_string(),
        ));
    }
    let interior = a.interior();
    let ratio = winding_of(|theta| interior.plus.eval(theta) / interior.minus.eval(theta))?;
    let conormal = conormal_winding(&a.conormal().plus)? + conormal_winding(&a.conormal().minus)?;
    Ok(INTERIOR_ORIENTATION * ratio + CONORMAL_ORIENTATION * conormal)
}

/// Winding of `a_ξ` along `M°`, from samples of the transported symbol.
pub fn interior_winding_along_curve(a: &ConeSymbol, xi_plus: bool) -> Result<i64> {
    let mut count = 1024;
    loop {
        let samples: Vec<c64> = (0..count)
            .map(|k| a.interior_value(xi_plus, -1.0 + 2.0 * k as f64 / count as f64))
            .collect();
        match winding_number(&samples) {
            Err(IndexError::UnderSampled { .. }) if count < 1 << 22 => count *= 2,
            r => return r,
        }
    }
}
