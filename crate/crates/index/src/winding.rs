use std::f64::consts::PI;

use conelab_linop::c64;

use crate::error::{IndexError, Result};

/// Largest admissible argument increment between consecutive samples.
pub const MAX_STEP: f64 = 0.5 * PI;

/// Winding number of a closed loop given by samples (the last sample connects to the first).
pub fn winding_number(samples: &[c64]) -> Result<i64> {
    if samples.is_empty() {
        return Ok(0);
    }
    let mut total = 0.0;
    for i in 0..samples.len() {
        let a = samples[i];
        let b = samples[(i + 1) % samples.len()];
        if a == c64::new(0.0, 0.0) {
            return Err(IndexError::ZeroOnLoop { index: i });
        }
        let step = (b / a).arg();
        if step.abs() >= MAX_STEP {
            return Err(IndexError::UnderSampled {
                index: i,
                jump: step,
            });
        }
        total += step;
    }
    Ok((total / (2.0 * PI)).round() as i64)
}

/// Winding of `f` on `[0, 2π)`, doubling the sample count until the loop is resolved.
pub fn winding_of(f: impl Fn(f64) -> c64) -> Result<i64> {
    let mut count = 256;
    loop {
        let samples: Vec<c64> = (0..count)
            .map(|k| f(2.0 * PI * k as f64 / count as f64))
            .collect();
        match winding_number(&samples) {
            Err(IndexError::UnderSampled { .. }) if count < 1 << 22 => count *= 2,
            r => return r,
        }
    }
}
