use crate::geometry::ConeGeometry;
use crate::profile;

/// Partition `χ₁² + χ₂² = 1` with the transition on `1 ≤ t ≤ 3`, and `ψ`
/// equal to 1 for `t ≤ 3` and 0 for `t ≥ 4`, sampled on the grid of `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct CutoffSystem {
    pub chi1: Vec<f64>,
    pub chi2: Vec<f64>,
    pub psi: Vec<f64>,
}

impl CutoffSystem {
    pub fn standard(geo: &ConeGeometry) -> Self {
        let t: Vec<f64> = (0..geo.manifold_dim()).map(|p| geo.manifold_t(p)).collect();
        Self {
            chi1: t.iter().map(|&t| profile::chi1(t)).collect(),
            chi2: t.iter().map(|&t| profile::chi2(t)).collect(),
            psi: t.iter().map(|&t| profile::psi(t)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.chi1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chi1.is_empty()
    }

    /// Largest `|χ₁² + χ₂² − 1|` over the grid.
    pub fn partition_defect(&self) -> f64 {
        self.chi1
            .iter()
            .zip(&self.chi2)
            .map(|(a, b)| (a * a + b * b - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// `ψ` as a function of `t`, used on the double.
    pub fn psi_of_t(t: f64) -> f64 {
        profile::psi(t)
    }
}
