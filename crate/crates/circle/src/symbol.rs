use conelab_linop::c64;

use crate::error::{CircleError, Result};
use crate::function::CircleFunction;
use crate::poly::TrigPolynomial;

/// Function on the cosphere bundle of the circle: one function per sheet `ξ = ±1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleSymbol {
    pub plus: CircleFunction,
    pub minus: CircleFunction,
}

impl CircleSymbol {
    pub fn new(plus: impl Into<CircleFunction>, minus: impl Into<CircleFunction>) -> Self {
        Self {
            plus: plus.into(),
            minus: minus.into(),
        }
    }

    /// Same function on both sheets.
    pub fn scalar(f: impl Into<CircleFunction>) -> Self {
        let f = f.into();
        Self {
            plus: f.clone(),
            minus: f,
        }
    }

    pub fn unit() -> Self {
        Self::scalar(TrigPolynomial::one())
    }

    pub fn degree(&self) -> usize {
        self.plus.degree().max(self.minus.degree())
    }

    pub fn min_modulus(&self) -> f64 {
        self.plus.min_modulus().min(self.minus.min_modulus())
    }

    pub fn is_elliptic(&self) -> bool {
        self.plus.is_elliptic() && self.minus.is_elliptic()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            plus: self.plus.mul(&rhs.plus),
            minus: self.minus.mul(&rhs.minus),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(Self {
            plus: self.plus.inv()?,
            minus: self.minus.inv()?,
        })
    }

    pub fn conj(&self) -> Self {
        Self {
            plus: self.plus.conj(),
            minus: self.minus.conj(),
        }
    }

    pub fn require_elliptic(&self) -> Result<()> {
        let m = self.min_modulus();
        if self.is_elliptic() {
            Ok(())
        } else {
            Err(CircleError::NotElliptic { min_modulus: m })
        }
    }

    pub fn eval(&self, sheet_plus: bool, theta: f64) -> c64 {
        if sheet_plus {
            self.plus.eval(theta)
        } else {
            self.minus.eval(theta)
        }
    }
}
