use std::f64::consts::PI;

use conelab_linop::c64;
use rustfft::FftPlanner;

/// Fourier coefficients `(1/2π)∫ f(θ) e^{−imθ} dθ` for `m = -max..=max`,
/// computed from `8(2·max+1)` samples rounded up to a power of two.
pub fn coefficients_of(f: impl Fn(f64) -> c64, max: usize) -> Vec<c64> {
    let len = (8 * (2 * max + 1)).next_power_of_two().max(64);
    coefficients_of_samples(
        &(0..len)
            .map(|j| f(2.0 * PI * j as f64 / len as f64))
            .collect::<Vec<_>>(),
        max,
    )
}

/// Same from equispaced samples on `[0, 2π)`; the sample count must exceed `2·max+1`.
pub fn coefficients_of_samples(samples: &[c64], max: usize) -> Vec<c64> {
    let len = samples.len();
    assert!(len > 2 * max, "too few samples for the requested modes");
    let mut buf = samples.to_vec();
    FftPlanner::new().plan_fft_forward(len).process(&mut buf);
    let scale = 1.0 / len as f64;
    let m = max as i64;
    (-m..=m)
        .map(|k| buf[k.rem_euclid(len as i64) as usize] * scale)
        .collect()
}
