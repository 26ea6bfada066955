use std::f64::consts::PI;
use std::sync::Arc;

use conelab_linop::{BasisLabel, SpaceTag};

use crate::error::{ConeError, Result};
use crate::profile::{soft_abs, t_of_s};

/// Default gluing locus of the double.
pub const DEFAULT_T_CUT: f64 = 10.0;
/// Default lower end of the cylinder window.
pub const DEFAULT_T_MINUS: f64 = 10.0;
/// Default upper end of the cylinder window.
pub const DEFAULT_T_PLUS: f64 = 16.0;
/// Default circle truncation of the double.
pub const DEFAULT_N: usize = 512;

/// Blend half-width of `t` across the glue of the double.
const GLUE_BLEND: f64 = 1.0;

/// Sheet labels of the ambient space.
pub const SHEET_XI_PLUS: i32 = 1;
pub const SHEET_XI_MINUS: i32 = -1;
pub const SHEET_OMEGA_PLUS: i32 = 2;
pub const SHEET_OMEGA_MINUS: i32 = -2;

/// Discretized curve `M` with one conical point, its cylinder end and its double.
///
/// Arc length `s` on `M°` is sampled at `s_j = jh`; the cone point sits at
/// `s = ±∞` and `t(s) = |s| − 1` away from the middle. The sheet `ω = +` is
/// `s > 0`. The double is a circle of length `L = 4(t_cut + 1)` sampled at
/// `σ_j = jh`, `|j| ≤ N`, so `h = L/(2N+1)`; copy 1 is `|σ| ≤ L/4`.
#[derive(Debug, Clone)]
pub struct ConeGeometry {
    n: usize,
    t_cut: f64,
    t_minus: f64,
    t_plus: f64,
    h: f64,
    k_min: i64,
    k_max: i64,
    manifold_space: Arc<SpaceTag>,
    cylinder_space: Arc<SpaceTag>,
    double_space: Arc<SpaceTag>,
    ambient_space: Arc<SpaceTag>,
}

impl ConeGeometry {
    pub fn new(n: usize, t_cut: f64, t_minus: f64, t_plus: f64) -> Result<Self> {
        if !(t_cut.is_finite() && t_cut >= 5.0) {
            return Err(ConeError::GridMismatch(format!(
                "t_cut = {t_cut} leaves no room for the cutoffs (need t_cut ≥ 5)"
            )));
        }
        if !(t_plus.is_finite() && t_plus > t_cut) {
            return Err(ConeError::GridMismatch(format!(
                "window top T+ = {t_plus} must exceed t_cut = {t_cut}"
            )));
        }
        if !(t_minus.is_finite() && t_minus >= 1.0) {
            return Err(ConeError::GridMismatch(format!(
                "window bottom T- = {t_minus} must be at least 1"
            )));
        }
        if n < 8 {
            return Err(ConeError::GridMismatch(format!(
                "circle truncation N = {n} is too small"
            )));
        }
        let length = 4.0 * (t_cut + 1.0);
        let h = length / (2 * n + 1) as f64;
        let k_max = ((t_plus + 1.0) / h).floor() as i64;
        let k_min = ((1.0 - t_minus) / h).ceil() as i64;
        let manifold_space = Arc::new(
            SpaceTag::new("M", (-k_max..=k_max).map(BasisLabel::Index).collect())
                .expect("distinct labels"),
        );
        let cyl_labels = |omega: i32| (k_min..=k_max).map(move |k| BasisLabel::Sheet(omega, k));
        let cylinder_space = Arc::new(
            SpaceTag::new("C", cyl_labels(1).chain(cyl_labels(-1)).collect())
                .expect("distinct labels"),
        );
        let double_space = Arc::new(SpaceTag::modes("2M", n));
        let nn = n as i64;
        let mode_labels = |xi: i32| (-nn..=nn).map(move |m| BasisLabel::Sheet(xi, m));
        let ambient_space = Arc::new(
            SpaceTag::new(
                "H~",
                mode_labels(SHEET_XI_PLUS)
                    .chain(mode_labels(SHEET_XI_MINUS))
                    .chain(cyl_labels(SHEET_OMEGA_PLUS))
                    .chain(cyl_labels(SHEET_OMEGA_MINUS))
                    .collect(),
            )
            .expect("distinct labels"),
        );
        Ok(Self {
            n,
            t_cut,
            t_minus,
            t_plus,
            h,
            k_min,
            k_max,
            manifold_space,
            cylinder_space,
            double_space,
            ambient_space,
        })
    }

    /// Default geometry at circle truncation `n`.
    pub fn with_truncation(n: usize) -> Result<Self> {
        Self::new(n, DEFAULT_T_CUT, DEFAULT_T_MINUS, DEFAULT_T_PLUS)
    }

    /// Geometry whose step is as close as possible to `h` from above.
    pub fn with_step(h: f64, t_cut: f64, t_minus: f64, t_plus: f64) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(ConeError::GridMismatch(format!(
                "grid step h = {h} must be positive"
            )));
        }
        let length = 4.0 * (t_cut + 1.0);
        let n = ((length / h - 1.0) / 2.0).ceil().max(0.0) as usize;
        Self::new(n, t_cut, t_minus, t_plus)
    }

    /// Same window with `N` doubled, so `h` roughly halves.
    pub fn refined(&self) -> Result<Self> {
        Self::new(2 * self.n, self.t_cut, self.t_minus, self.t_plus)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn t_cut(&self) -> f64 {
        self.t_cut
    }

    pub fn t_minus(&self) -> f64 {
        self.t_minus
    }

    pub fn t_plus(&self) -> f64 {
        self.t_plus
    }

    /// Circumference of the double.
    pub fn length(&self) -> f64 {
        4.0 * (self.t_cut + 1.0)
    }

    pub fn manifold_space(&self) -> &Arc<SpaceTag> {
        &self.manifold_space
    }

    pub fn cylinder_space(&self) -> &Arc<SpaceTag> {
        &self.cylinder_space
    }

    pub fn double_space(&self) -> &Arc<SpaceTag> {
        &self.double_space
    }

    /// `L²(S*2M) ⊕ L²(C_Ω)`: modes on `ξ = +`, modes on `ξ = −`, then the
    /// cylinder sheets `ω = +`, `ω = −`.
    pub fn ambient_space(&self) -> &Arc<SpaceTag> {
        &self.ambient_space
    }

    pub fn manifold_dim(&self) -> usize {
        self.manifold_space.dim()
    }

    pub fn double_dim(&self) -> usize {
        2 * self.n + 1
    }

    /// Points per cylinder sheet.
    pub fn sheet_dim(&self) -> usize {
        (self.k_max - self.k_min + 1) as usize
    }

    pub fn ambient_dim(&self) -> usize {
        2 * self.double_dim() + 2 * self.sheet_dim()
    }

    /// Offset of the block of sheet `sheet` in the ambient space.
    pub fn ambient_offset(&self, sheet: i32) -> usize {
        let d = self.double_dim();
        let c = self.sheet_dim();
        match sheet {
            SHEET_XI_PLUS => 0,
            SHEET_XI_MINUS => d,
            SHEET_OMEGA_PLUS => 2 * d,
            SHEET_OMEGA_MINUS => 2 * d + c,
            _ => panic!("unknown sheet {sheet}"),
        }
    }

    /// Grid indices `j` of `M`, ascending.
    pub fn manifold_indices(&self) -> std::ops::RangeInclusive<i64> {
        -self.k_max..=self.k_max
    }

    pub fn k_max(&self) -> i64 {
        self.k_max
    }

    pub fn k_min(&self) -> i64 {
        self.k_min
    }

    pub fn s_of(&self, j: i64) -> f64 {
        j as f64 * self.h
    }

    /// `t` at the manifold grid point at position `pos`.
    pub fn manifold_t(&self, pos: usize) -> f64 {
        t_of_s(self.s_of(pos as i64 - self.k_max))
    }

    /// `t` at cylinder grid index `k`.
    pub fn cylinder_t(&self, k: i64) -> f64 {
        k as f64 * self.h - 1.0
    }

    /// Cylinder sheet and index of the manifold grid point at `pos`, if it lies on the end.
    pub fn cylinder_position(&self, pos: usize) -> Option<(i32, i64)> {
        let j = pos as i64 - self.k_max;
        match j.cmp(&0) {
            std::cmp::Ordering::Greater => Some((1, j)),
            std::cmp::Ordering::Less => Some((-1, -j)),
            std::cmp::Ordering::Equal => None,
        }
    }

    /// Double grid index of the manifold point at `pos`, if it lies in copy 1.
    pub fn double_position(&self, pos: usize) -> Option<usize> {
        let j = pos as i64 - self.k_max;
        let s = self.s_of(j);
        (s.abs() <= 0.25 * self.length() && j.unsigned_abs() as usize <= self.n)
            .then(|| (j + self.n as i64) as usize)
    }

    /// Arc length on `M` of the point `σ` of the double (copy 2 is mirrored).
    pub fn fold(&self, sigma: f64) -> f64 {
        let half = 0.5 * self.length();
        let sigma = wrap(sigma, half);
        if sigma.abs() <= 0.5 * half {
            sigma
        } else {
            sigma.signum() * half - sigma
        }
    }

    /// `t` on the double, smooth across the glue.
    pub fn double_t(&self, sigma: f64) -> f64 {
        let half = 0.5 * self.length();
        let sigma = wrap(sigma, half);
        let d = sigma.abs() - 0.5 * half;
        if d.abs() <= GLUE_BLEND {
            self.t_cut - soft_abs(d, GLUE_BLEND)
        } else {
            t_of_s(self.fold(sigma))
        }
    }

    /// Point of the double at circle angle `θ`.
    pub fn sigma_of_angle(&self, theta: f64) -> f64 {
        theta * self.length() / (2.0 * PI)
    }
}

fn wrap(sigma: f64, half: f64) -> f64 {
    let l = 2.0 * half;
    let r = (sigma + half).rem_euclid(l) - half;
    if r <= -half {
        r + l
    } else {
        r
    }
}
