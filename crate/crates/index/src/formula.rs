use std::sync::OnceLock;

use conelab_circle::{
    hardy_projections, multiplication_operator, CircleTruncation, TrigPolynomial,
};
use conelab_linop::faer::MatRef;
use conelab_linop::{c64, Action, LinearOperator, Projection};

use crate::character::{
    character_constant, chern_connes, commutator_trace_factored, gamma_half_order, sqrt_i,
    CharacterInput,
};
use crate::error::{IndexError, Result};

/// Reports with a larger distance to the nearest integer are inconclusive.
pub const RESIDUAL_LIMIT: f64 = 0.1;

/// Outcome of the index formula.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexReport {
    /// Calibrated value before rounding.
    pub raw: c64,
    pub rounded: i64,
    pub residual: f64,
    pub n_used: usize,
    /// Sign of the calibration factor.
    pub sign_convention: f64,
    /// Magnitude of the calibration factor, a power of two.
    pub scale: f64,
}

impl IndexReport {
    fn from_raw(raw: c64, n: usize, calibration: f64) -> Self {
        let rounded = raw.re.round();
        let residual = ((raw.re - rounded).powi(2) + raw.im.powi(2)).sqrt();
        Self {
            raw,
            rounded: rounded as i64,
            residual,
            n_used: n,
            sign_convention: calibration.signum(),
            scale: calibration.abs(),
        }
    }

    pub fn is_conclusive(&self) -> bool {
        self.residual < RESIDUAL_LIMIT
    }

    /// The rounded index, or `Inconclusive`.
    pub fn index(&self) -> Result<i64> {
        if self.is_conclusive() {
            Ok(self.rounded)
        } else {
            Err(IndexError::Inconclusive {
                raw: self.raw.re,
                residual: self.residual,
            })
        }
    }
}

/// Prefactor of the index formula applied to the character:
/// `Γ(N/2+1)/(2^{N−1/2}√i)`.
pub fn index_constant(n: usize) -> c64 {
    let denom = sqrt_i() * 2f64.powf(n as f64 - 0.5);
    c64::new(gamma_half_order(n), 0.0) / denom
}

/// Index-formula constant times the character constant; real, equal to `2^{1−N}(−1)^{N(N−1)/2}`.
pub fn formula_constant(n: usize) -> c64 {
    index_constant(n) * character_constant(n)
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 || n % 2 == 0 {
        Err(IndexError::EvenOrder(n))
    } else {
        Ok(())
    }
}

/// Arguments `(a⁻¹, a, a⁻¹, …, a)` with `N + 1` entries.
fn alternating<'a, T: ?Sized>(a: &'a T, a_inv: &'a T, n: usize) -> Vec<&'a T> {
    (0..=n)
        .map(|k| if k % 2 == 0 { a_inv } else { a })
        .collect()
}

/// Calibration factor at order `N`: the signed power of two making the
/// formula return −1 for the Hardy projection and multiplication by `e^{iθ}`.
/// It equals `−2^{N−1}`: the constants are normalized for `F = 2P − 1`, and
/// `[F, a] = 2[P, a]`.
pub fn calibration(n: usize) -> Result<f64> {
    check_order(n)?;
    static CACHE: OnceLock<std::sync::Mutex<Vec<(usize, f64)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| std::sync::Mutex::new(Vec::new()));
    if let Some(&(_, c)) = cache
        .lock()
        .expect("cache lock")
        .iter()
        .find(|(k, _)| *k == n)
    {
        return Ok(c);
    }
    let tr = CircleTruncation::new(16);
    let (pp, _) = hardy_projections(&tr);
    let s = multiplication_operator(&TrigPolynomial::exp_i(1), &tr)?;
    let si = multiplication_operator(&TrigPolynomial::exp_i(-1), &tr)?;
    let inp = CharacterInput::new(&pp, alternating(&s, &si, n))?;
    let uncalibrated = index_constant(n) * chern_connes(&inp);
    let exact = -1.0 / uncalibrated.re;
    let c = exact.signum() * 2f64.powi(exact.abs().log2().round() as i32);
    if (c - exact).abs() > 1e-6 * c.abs() {
        return Err(IndexError::Inconclusive {
            raw: uncalibrated.re,
            residual: (c - exact).abs(),
        });
    }
    cache.lock().expect("cache lock").push((n, c));
    Ok(c)
}

/// Index of the Toeplitz operator of `a` on `im P` through the character of
/// order `N` evaluated on `(a⁻¹, a, …, a⁻¹, a)`. `a_inv` is the action of
/// the inverse symbol; on a truncation it is not the matrix inverse of `a`.
pub fn index_via_character(
    p: &Projection,
    a: &LinearOperator,
    a_inv: &LinearOperator,
    n: usize,
) -> Result<IndexReport> {
    check_order(n)?;
    let inp = CharacterInput::new(p, alternating(a, a_inv, n))?;
    let value = index_constant(n) * chern_connes(&inp);
    let c = calibration(n)?;
    Ok(IndexReport::from_raw(value * c, n, c))
}

/// Same formula for `P = WW*` with actions known through products with `W`.
pub fn index_via_character_factored(
    w: MatRef<'_, c64>,
    a: &dyn Action,
    a_inv: &dyn Action,
    n: usize,
) -> Result<IndexReport> {
    check_order(n)?;
    let args = alternating(a, a_inv, n);
    let value = formula_constant(n) * commutator_trace_factored(w, &args);
    let c = calibration(n)?;
    Ok(IndexReport::from_raw(value * c, n, c))
}
