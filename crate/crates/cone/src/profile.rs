use std::f64::consts::PI;

/// `C^∞` step: 0 for `x ≤ 0`, 1 for `x ≥ 1`.
pub fn smoothstep(x: f64) -> f64 {
    fn f(x: f64) -> f64 {
        if x > 0.0 {
            (-1.0 / x).exp()
        } else {
            0.0
        }
    }
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        let a = f(x);
        a / (a + f(1.0 - x))
    }
}

/// `|x|` for `|x| ≥ w`, an even quartic matching value, slope and curvature inside.
pub fn soft_abs(x: f64, w: f64) -> f64 {
    if x.abs() >= w {
        return x.abs();
    }
    let c0 = 3.0 * w / 8.0;
    let c2 = 3.0 / (4.0 * w);
    let c4 = -1.0 / (8.0 * w * w * w);
    let x2 = x * x;
    c0 + c2 * x2 + c4 * x2 * x2
}

/// Width of the blend in the cylinder coordinate near the middle of the curve.
pub const MIDDLE_BLEND: f64 = 0.5;

/// Cylinder coordinate on the curve as a function of arc length `s`.
pub fn t_of_s(s: f64) -> f64 {
    soft_abs(s, MIDDLE_BLEND) - 1.0
}

/// Phase carrying the circle parameter once around across the region `t < 0`,
/// reduced mod `2π`: exactly 0 for `|s| ≥ 1`.
pub fn transport_phase(s: f64) -> f64 {
    (2.0 * PI * smoothstep((s + 1.0) / 2.0)).rem_euclid(2.0 * PI)
}

/// Ramp of the chi-partition: `χ₁ = sin(πS/2)`, `χ₂ = sin(π(1 − S)/2)`,
/// written so both vanish exactly off the transition.
fn chi_ramp(t: f64) -> f64 {
    smoothstep((t - 1.0) / 2.0)
}

pub fn chi1(t: f64) -> f64 {
    (0.5 * PI * chi_ramp(t)).sin()
}

pub fn chi2(t: f64) -> f64 {
    (0.5 * PI * (1.0 - chi_ramp(t))).sin()
}

pub fn psi(t: f64) -> f64 {
    1.0 - smoothstep(t - 3.0)
}

/// Frequency warp used to sample conormal symbols on `(−π, π)`:
/// `p(θ) = (2/h)·tan(θ/2)·G(θ)` with `G = 47/60 + (7/30)cos θ − (1/60)cos 2θ`.
/// Agrees with `θ/h` up to `O(θ⁷)` and sends `±π` to `±∞`.
pub fn warped_frequency(theta: f64, h: f64) -> f64 {
    let g = 47.0 / 60.0 + (7.0 / 30.0) * theta.cos() - (2.0 * theta).cos() / 60.0;
    2.0 / h * (0.5 * theta).tan() * g
}

/// `1/p(θ)`, finite at `θ = ±π`.
pub fn inverse_warped_frequency(theta: f64, h: f64) -> f64 {
    let g = 47.0 / 60.0 + (7.0 / 30.0) * theta.cos() - (2.0 * theta).cos() / 60.0;
    0.5 * h * (0.5 * theta).cos() / ((0.5 * theta).sin() * g)
}
