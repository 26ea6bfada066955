use std::collections::BTreeMap;

use conelab_linop::c64;

/// Finite Fourier series `Σ c_m e^{imθ}`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrigPolynomial {
    coeffs: BTreeMap<i64, c64>,
}

impl TrigPolynomial {
    pub fn new(coeffs: impl IntoIterator<Item = (i64, c64)>) -> Self {
        let mut map = BTreeMap::new();
        for (m, c) in coeffs {
            *map.entry(m).or_insert(c64::new(0.0, 0.0)) += c;
        }
        map.retain(|_, c| *c != c64::new(0.0, 0.0));
        Self { coeffs: map }
    }

    /// Coefficients listed from mode `lowest` upward.
    pub fn from_slice(lowest: i64, coeffs: &[c64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (lowest + k as i64, *c)),
        )
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: c64) -> Self {
        Self::new([(0, c)])
    }

    pub fn one() -> Self {
        Self::constant(c64::new(1.0, 0.0))
    }

    /// `e^{ikθ}`.
    pub fn exp_i(k: i64) -> Self {
        Self::new([(k, c64::new(1.0, 0.0))])
    }

    pub fn coeff(&self, m: i64) -> c64 {
        self.coeffs.get(&m).copied().unwrap_or(c64::new(0.0, 0.0))
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, c64)> + '_ {
        self.coeffs.iter().map(|(m, c)| (*m, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest `|m|` with a nonzero coefficient.
    pub fn degree(&self) -> usize {
        self.coeffs
            .keys()
            .map(|m| m.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn lowest_mode(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(0)
    }

    pub fn highest_mode(&self) -> i64 {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    pub fn eval(&self, theta: f64) -> c64 {
        let mut s = c64::new(0.0, 0.0);
        for (m, c) in &self.coeffs {
            s += c * c64::from_polar(1.0, *m as f64 * theta);
        }
        s
    }

    /// Pointwise conjugate: coefficients `c̄_{−m}`.
    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(|(m, c)| (-m, c.conj())))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() * rhs.coeffs.len());
        for (m, a) in &self.coeffs {
            for (k, b) in &rhs.coeffs {
                out.push((m + k, a * b));
            }
        }
        Self::new(out)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(self.coeffs().chain(rhs.coeffs()))
    }

    pub fn scale(&self, s: c64) -> Self {
        Self::new(self.coeffs().map(|(m, c)| (m, c * s)))
    }
}
