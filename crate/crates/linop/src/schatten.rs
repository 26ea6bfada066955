use crate::error::Result;
use crate::operator::LinearOperator;
use crate::rank::singular_values;

/// Schatten p-norm; `p = f64::INFINITY` gives the largest singular value.
/// `p = 2` is evaluated as the Frobenius norm without a decomposition.
pub fn schatten_norm(t: &LinearOperator, p: f64) -> Result<f64> {
    assert!(p >= 1.0, "Schatten exponent must be at least 1");
    if p == 2.0 {
        return Ok(t.norm_fro());
    }
    let s = singular_values(t)?;
    Ok(schatten_from_singular_values(&s, p))
}

pub fn schatten_from_singular_values(s: &[f64], p: f64) -> f64 {
    if s.is_empty() {
        return 0.0;
    }
    if p.is_infinite() {
        return s.iter().copied().fold(0.0, f64::max);
    }
    let smax = s.iter().copied().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0.0;
    }
    let mut acc = 0.0;
    for &x in s.iter().rev() {
        acc += (x / smax).powf(p);
    }
    smax * acc.powf(1.0 / p)
}
