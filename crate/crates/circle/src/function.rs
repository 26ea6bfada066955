use std::f64::consts::PI;

use conelab_linop::c64;

use crate::error::{CircleError, Result};
use crate::fourier::coefficients_of;
use crate::poly::TrigPolynomial;

/// Ratio of two trigonometric polynomials with a denominator free of zeros on
/// the circle. Closed under products and, for elliptic data, inverses.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleFunction {
    num: TrigPolynomial,
    den: TrigPolynomial,
}

/// Number of evaluation points used for modulus certificates.
pub fn certificate_points(degree: usize) -> usize {
    (8 * (degree + 1)).max(512)
}

pub(crate) fn min_modulus(p: &TrigPolynomial) -> f64 {
    let k = certificate_points(p.degree());
    (0..k)
        .map(|j| p.eval(2.0 * PI * j as f64 / k as f64).norm())
        .fold(f64::INFINITY, f64::min)
}

const MODULUS_FLOOR: f64 = 1e-10;

impl CircleFunction {
    pub fn new(num: TrigPolynomial, den: TrigPolynomial) -> Result<Self> {
        let m = min_modulus(&den);
        if m <= MODULUS_FLOOR {
            return Err(CircleError::PoleOnCircle { min_modulus: m });
        }
        Ok(Self { num, den })
    }

    pub fn one() -> Self {
        TrigPolynomial::one().into()
    }

    pub fn constant(c: c64) -> Self {
        TrigPolynomial::constant(c).into()
    }

    pub fn exp_i(k: i64) -> Self {
        TrigPolynomial::exp_i(k).into()
    }

    pub fn numerator(&self) -> &TrigPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &TrigPolynomial {
        &self.den
    }

    /// Polynomial form when the denominator is a single monomial.
    pub fn as_polynomial(&self) -> Option<TrigPolynomial> {
        let mut it = self.den.coeffs();
        let (k, c) = it.next()?;
        if it.next().is_some() {
            return None;
        }
        Some(self.num.mul(&TrigPolynomial::new([(-k, 1.0 / c)])))
    }

    pub fn degree(&self) -> usize {
        self.num.degree() + self.den.degree()
    }

    pub fn eval(&self, theta: f64) -> c64 {
        self.num.eval(theta) / self.den.eval(theta)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let out = Self {
            num: self.num.mul(&rhs.num),
            den: self.den.mul(&rhs.den),
        };
        out.reduced()
    }

    /// Pointwise reciprocal.
    pub fn inv(&self) -> Result<Self> {
        let m = min_modulus(&self.num);
        if m <= MODULUS_FLOOR {
            return Err(CircleError::NotElliptic { min_modulus: m });
        }
        Ok(Self {
            num: self.den.clone(),
            den: self.num.clone(),
        }
        .reduced())
    }

    pub fn conj(&self) -> Self {
        Self {
            num: self.num.conj(),
            den: self.den.conj(),
        }
    }

    /// Minimum of `|f|` on the certificate grid.
    pub fn min_modulus(&self) -> f64 {
        let k = certificate_points(self.degree());
        (0..k)
            .map(|j| self.eval(2.0 * PI * j as f64 / k as f64).norm())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn is_elliptic(&self) -> bool {
        self.min_modulus() > MODULUS_FLOOR
    }

    /// Fourier coefficients for modes `-max..=max`, exact for polynomials.
    pub fn fourier_coefficients(&self, max: usize) -> Vec<c64> {
        if let Some(p) = self.as_polynomial() {
            let m = max as i64;
            return (-m..=m).map(|k| p.coeff(k)).collect();
        }
        coefficients_of(|t| self.eval(t), max)
    }

    fn reduced(self) -> Self {
        match self.as_polynomial() {
            Some(p) => p.into(),
            None => self,
        }
    }
}

impl From<TrigPolynomial> for CircleFunction {
    fn from(num: TrigPolynomial) -> Self {
        Self {
            num,
            den: TrigPolynomial::one(),
        }
    }
}
