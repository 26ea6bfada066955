use std::f64::consts::PI;

use conelab_linop::c64;

use crate::error::{ConeError, Result};

/// Polynomial in the real variable `p`, coefficients by ascending power.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<c64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<c64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&c64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(c64::new(0.0, 0.0));
        }
        Self { coeffs }
    }

    pub fn constant(c: c64) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[c64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> c64 {
        *self.coeffs.last().expect("nonempty")
    }

    pub fn eval(&self, p: c64) -> c64 {
        self.coeffs
            .iter()
            .rev()
            .fold(c64::new(0.0, 0.0), |acc, c| acc * p + c)
    }

    /// `q^deg · poly(1/q)`: the reversed polynomial.
    pub fn eval_reversed(&self, q: f64) -> c64 {
        self.coeffs
            .iter()
            .fold(c64::new(0.0, 0.0), |acc, c| acc * q + c)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = vec![c64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    /// Complex roots by Durand–Kerner iteration.
    pub fn roots(&self) -> Vec<c64> {
        let d = self.degree();
        if d == 0 {
            return Vec::new();
        }
        let lead = self.leading();
        let monic: Vec<c64> = self.coeffs.iter().map(|c| c / lead).collect();
        let eval = |z: c64| {
            monic
                .iter()
                .rev()
                .fold(c64::new(0.0, 0.0), |acc, c| acc * z + c)
        };
        let radius = 1.0 + monic[..d].iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut z: Vec<c64> = (0..d)
            .map(|k| c64::from_polar(radius, 2.0 * PI * (k as f64 + 0.25) / d as f64))
            .collect();
        for _ in 0..500 {
            let mut delta: f64 = 0.0;
            for i in 0..d {
                let mut den = c64::new(1.0, 0.0);
                for j in 0..d {
                    if i != j {
                        den *= z[i] - z[j];
                    }
                }
                let step = eval(z[i]) / den;
                z[i] -= step;
                delta = delta.max(step.norm());
            }
            if delta < 1e-15 * radius {
                break;
            }
        }
        z
    }
}

/// Zero-order rational function `A(p) = n(p)/d(p)` with `deg n = deg d` and no real poles.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalSymbol {
    num: Polynomial,
    den: Polynomial,
}

const REAL_AXIS_MARGIN: f64 = 1e-8;

fn nearest_real_root(p: &Polynomial) -> Option<c64> {
    p.roots()
        .into_iter()
        .find(|r| r.im.abs() <= REAL_AXIS_MARGIN * (1.0 + r.re.abs()))
}

impl RationalSymbol {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if num.degree() != den.degree() {
            return Err(ConeError::DegreeMismatch {
                num: num.degree(),
                den: den.degree(),
            });
        }
        if let Some(r) = nearest_real_root(&den) {
            return Err(ConeError::PoleOnRealAxis { re: r.re, im: r.im });
        }
        let s = Self { num, den };
        let grid_min = s.denominator_grid_minimum();
        if grid_min <= 1e-12 {
            return Err(ConeError::PoleOnRealAxis {
                re: f64::NAN,
                im: 0.0,
            });
        }
        Ok(s)
    }

    /// From coefficient lists by ascending power.
    pub fn from_coeffs(num: &[c64], den: &[c64]) -> Result<Self> {
        Self::new(Polynomial::new(num.to_vec()), Polynomial::new(den.to_vec()))
    }

    pub fn constant(c: c64) -> Self {
        Self {
            num: Polynomial::constant(c),
            den: Polynomial::constant(c64::new(1.0, 0.0)),
        }
    }

    pub fn one() -> Self {
        Self::constant(c64::new(1.0, 0.0))
    }

    /// `((p − i)/(p + i))^k`; negative `k` inverts.
    pub fn cayley_power(k: i32) -> Self {
        let i = c64::new(0.0, 1.0);
        let one = c64::new(1.0, 0.0);
        let a = Polynomial::new(vec![-i, one]);
        let b = Polynomial::new(vec![i, one]);
        let (top, bottom) = if k >= 0 { (a, b) } else { (b, a) };
        let mut num = Polynomial::constant(one);
        let mut den = Polynomial::constant(one);
        for _ in 0..k.unsigned_abs() {
            num = num.mul(&top);
            den = den.mul(&bottom);
        }
        Self { num, den }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.num.degree()
    }

    pub fn eval(&self, p: f64) -> c64 {
        if p.abs() > 1.0 {
            let q = 1.0 / p;
            return self.num.eval_reversed(q) / self.den.eval_reversed(q);
        }
        let z = c64::new(p, 0.0);
        self.num.eval(z) / self.den.eval(z)
    }

    /// Value as a function of `q = 1/p`; `q = 0` gives the limit at infinity.
    pub fn eval_inverse(&self, q: f64) -> c64 {
        if q.abs() < 1.0 {
            return self.num.eval_reversed(q) / self.den.eval_reversed(q);
        }
        self.eval(1.0 / q)
    }

    /// Common limit at `p → ±∞`.
    pub fn limit(&self) -> c64 {
        self.num.leading() / self.den.leading()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            num: self.num.mul(&rhs.num),
            den: self.den.mul(&rhs.den),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if nearest_real_root(&self.num).is_some() {
            return Err(ConeError::NotElliptic {
                min_modulus: self.min_modulus(),
            });
        }
        Ok(Self {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    /// Pointwise conjugate on the real line.
    pub fn conj(&self) -> Self {
        Self {
            num: self.num.conj(),
            den: self.den.conj(),
        }
    }

    /// Values along the compactified line, `p = tan(θ/2)` for `θ ∈ [−π, π)`.
    pub fn loop_samples(&self, count: usize) -> Vec<c64> {
        (0..count)
            .map(|k| {
                let theta = -PI + 2.0 * PI * k as f64 / count as f64;
                let c = (0.5 * theta).cos();
                let s = (0.5 * theta).sin();
                if c.abs() < s.abs() {
                    self.eval_inverse(c / s)
                } else {
                    self.eval(s / c)
                }
            })
            .collect()
    }

    pub fn min_modulus(&self) -> f64 {
        self.loop_samples(4096)
            .iter()
            .map(|z| z.norm())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn is_elliptic(&self) -> bool {
        self.limit().norm() > 1e-10
            && nearest_real_root(&self.num).is_none()
            && self.min_modulus() > 1e-10
    }

    fn denominator_grid_minimum(&self) -> f64 {
        let d = self.degree() as i32;
        (0..4096)
            .map(|k| {
                let theta = -PI + 2.0 * PI * (k as f64 + 0.5) / 4096.0;
                let p = (0.5 * theta).tan();
                self.den.eval(c64::new(p, 0.0)).norm() / (1.0 + p * p).powf(0.5 * d as f64)
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// Conormal symbol: one rational function per sheet of the cylinder.
#[derive(Debug, Clone, PartialEq)]
pub struct ConormalFamily {
    pub plus: RationalSymbol,
    pub minus: RationalSymbol,
}

impl ConormalFamily {
    pub fn new(plus: RationalSymbol, minus: RationalSymbol) -> Self {
        Self { plus, minus }
    }

    pub fn one() -> Self {
        Self::new(RationalSymbol::one(), RationalSymbol::one())
    }

    pub fn sheet(&self, omega: i32) -> &RationalSymbol {
        if omega >= 0 {
            &self.plus
        } else {
            &self.minus
        }
    }

    /// `(A₊(−∞), A₊(+∞), A₋(−∞), A₋(+∞))`.
    pub fn limits(&self) -> [c64; 4] {
        [
            self.plus.limit(),
            self.plus.limit(),
            self.minus.limit(),
            self.minus.limit(),
        ]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(self.plus.mul(&rhs.plus), self.minus.mul(&rhs.minus))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(Self::new(self.plus.inv()?, self.minus.inv()?))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.plus.conj(), self.minus.conj())
    }

    pub fn is_elliptic(&self) -> bool {
        self.plus.is_elliptic() && self.minus.is_elliptic()
    }
}
