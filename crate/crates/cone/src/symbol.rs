use conelab_circle::CircleSymbol;
use conelab_linop::c64;

use crate::error::{ConeError, Result};
use crate::geometry::ConeGeometry;
use crate::profile::transport_phase;
use crate::rational::{ConormalFamily, RationalSymbol};

/// Tolerance of the matching condition.
pub const MATCHING_TOL: f64 = 1e-10;

/// Symbol `(A(x,ξ), 𝐀(p))` of the stabilized algebra.
///
/// The interior symbol on `S*M°` is a circle symbol `(b₊, b₋)` carried along
/// arc length by the phase `ϑ(s)`: `a_ξ(s) = b_ξ(e^{iϑ(s)})`. It varies only
/// on `|s| < 1`, i.e. for `t < 0`, and equals `b_ξ(1)` on both cylinder ends.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeSymbol {
    interior: CircleSymbol,
    conormal: ConormalFamily,
}

impl ConeSymbol {
    pub fn new(interior: CircleSymbol, conormal: ConormalFamily) -> Result<Self> {
        let s = Self { interior, conormal };
        s.check_matching()?;
        Ok(s)
    }

    pub fn unit() -> Self {
        Self {
            interior: CircleSymbol::unit(),
            conormal: ConormalFamily::one(),
        }
    }

    /// Interior factor with the conormal symbol frozen at its limits.
    pub fn interior_only(interior: CircleSymbol) -> Result<Self> {
        let plus = interior.eval(true, 0.0);
        let minus = interior.eval(false, 0.0);
        let residual = (plus - minus).norm();
        if residual > MATCHING_TOL * (1.0 + plus.norm()) {
            return Err(ConeError::MatchingViolation { sheet: 0, residual });
        }
        let c = RationalSymbol::constant(plus);
        Self::new(interior, ConormalFamily::new(c.clone(), c))
    }

    /// Conormal factor with the interior symbol frozen at the common limit.
    pub fn conormal_only(conormal: ConormalFamily) -> Result<Self> {
        let v = conormal.plus.limit();
        Self::new(
            CircleSymbol::scalar(conelab_circle::CircleFunction::constant(v)),
            conormal,
        )
    }

    pub fn interior(&self) -> &CircleSymbol {
        &self.interior
    }

    pub fn conormal(&self) -> &ConormalFamily {
        &self.conormal
    }

    /// Stabilized value `a_{ω,ξ}(∞)`, the same on both sheets.
    pub fn stabilized(&self, xi_plus: bool) -> c64 {
        self.interior.eval(xi_plus, 0.0)
    }

    /// Largest residual of the matching condition over both sheets.
    pub fn matching_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for omega in [1, -1] {
            let a = self.conormal.sheet(omega);
            worst = worst
                .max((a.limit() - self.stabilized(true)).norm())
                .max((a.limit() - self.stabilized(false)).norm());
        }
        worst
    }

    fn check_matching(&self) -> Result<()> {
        for omega in [1, -1] {
            let a = self.conormal.sheet(omega);
            let scale = 1.0 + a.limit().norm();
            let residual = (a.limit() - self.stabilized(true))
                .norm()
                .max((a.limit() - self.stabilized(false)).norm());
            if residual > MATCHING_TOL * scale {
                return Err(ConeError::MatchingViolation {
                    sheet: omega,
                    residual,
                });
            }
        }
        Ok(())
    }

    /// Interior symbol on sheet `ξ` at arc length `s` of `M°`.
    pub fn interior_value(&self, xi_plus: bool, s: f64) -> c64 {
        self.interior.eval(xi_plus, transport_phase(s))
    }

    /// Interior symbol on sheet `ξ` of the double at `σ`.
    pub fn on_double(&self, geo: &ConeGeometry, xi_plus: bool, sigma: f64) -> c64 {
        self.interior_value(xi_plus, geo.fold(sigma))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            interior: self.interior.mul(&rhs.interior),
            conormal: self.conormal.mul(&rhs.conormal),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let interior = self.interior.inv().map_err(|_| ConeError::NotElliptic {
            min_modulus: self.interior.min_modulus(),
        })?;
        Ok(Self {
            interior,
            conormal: self.conormal.inv()?,
        })
    }

    pub fn conj(&self) -> Self {
        Self {
            interior: self.interior.conj(),
            conormal: self.conormal.conj(),
        }
    }

    pub fn min_modulus(&self) -> f64 {
        self.interior
            .min_modulus()
            .min(self.conormal.plus.min_modulus())
            .min(self.conormal.minus.min_modulus())
    }

    pub fn is_elliptic(&self) -> bool {
        self.interior.is_elliptic() && self.conormal.is_elliptic()
    }

    pub fn require_elliptic(&self) -> Result<()> {
        if self.is_elliptic() {
            Ok(())
        } else {
            Err(ConeError::NotElliptic {
                min_modulus: self.min_modulus(),
            })
        }
    }
}
