use conelab_linop::faer::Mat;
use conelab_linop::{c64, LinearOperator, Projection};

use crate::error::{CircleError, Result};
use crate::function::CircleFunction;
use crate::poly::TrigPolynomial;
use crate::symbol::CircleSymbol;
use crate::toeplitz::Toeplitz;
use crate::truncation::CircleTruncation;

fn zero() -> c64 {
    c64::new(0.0, 0.0)
}

fn one() -> c64 {
    c64::new(1.0, 0.0)
}

/// Compression of multiplication by `b` to the kept modes: `(M_b)_{n,n'} = c_{n−n'}`.
pub fn multiplication_operator(
    b: &TrigPolynomial,
    tr: &CircleTruncation,
) -> Result<LinearOperator> {
    let limit = 2 * tr.n();
    if b.degree() > limit {
        return Err(CircleError::DegreeOverflow {
            degree: b.degree(),
            limit,
        });
    }
    let s = tr.space().clone();
    Ok(LinearOperator::from_fn(s.clone(), s, |i, j| {
        b.coeff(i as i64 - j as i64)
    }))
}

/// Toeplitz compression of multiplication by a rational function.
pub fn multiplication_toeplitz(f: &CircleFunction, tr: &CircleTruncation) -> Toeplitz {
    let max = 2 * tr.n();
    let c = f.fourier_coefficients(max);
    Toeplitz::new(tr.dim(), |m| c[(m + max as i64) as usize])
}

pub fn multiplication_operator_fn(f: &CircleFunction, tr: &CircleTruncation) -> LinearOperator {
    let t = multiplication_toeplitz(f, tr);
    LinearOperator::on(tr.space().clone(), t.dense()).expect("square")
}

/// `(P₊, P₋)` with `P₊` keeping modes `n ≥ 0`.
pub fn hardy_projections(tr: &CircleTruncation) -> (Projection, Projection) {
    let p = Projection::coordinate(tr.space().clone(), |i| tr.mode(i) >= 0);
    let m = Projection::coordinate(tr.space().clone(), |i| tr.mode(i) < 0);
    (p, m)
}

/// `u ↦ (P₊u, P₋u)` into the two-sheeted space.
pub fn guillemin_transform_circle(tr: &CircleTruncation) -> LinearOperator {
    let d = tr.dim();
    let mut m = Mat::zeros(2 * d, d);
    for i in 0..d {
        if tr.mode(i) >= 0 {
            m[(i, i)] = one();
        } else {
            m[(d + i, i)] = one();
        }
    }
    LinearOperator::new(tr.space().clone(), tr.double_space().clone(), m).expect("shape")
}

/// `Π = TT*`, the block-diagonal Szegő projection on the two-sheeted space.
pub fn szego_projection(tr: &CircleTruncation) -> Projection {
    let d = tr.dim();
    Projection::coordinate(tr.double_space().clone(), |k| {
        if k < d {
            tr.mode(k) >= 0
        } else {
            tr.mode(k - d) < 0
        }
    })
}

/// `diag(M_{b₊}, M_{b₋})` on the two-sheeted space.
pub fn sheet_multiplication(b: &CircleSymbol, tr: &CircleTruncation) -> LinearOperator {
    let d = tr.dim();
    let p = multiplication_toeplitz(&b.plus, tr).dense();
    let q = multiplication_toeplitz(&b.minus, tr).dense();
    let m = Mat::from_fn(2 * d, 2 * d, |i, j| match (i < d, j < d) {
        (true, true) => p[(i, j)],
        (false, false) => q[(i - d, j - d)],
        _ => zero(),
    });
    LinearOperator::on(tr.double_space().clone(), m).expect("square")
}

/// `b̂ = M_{b₊}P₊ + M_{b₋}P₋`.
pub fn circle_pdo_quantize(b: &CircleSymbol, tr: &CircleTruncation) -> Result<LinearOperator> {
    let limit = 2 * tr.n();
    for f in [&b.plus, &b.minus] {
        if let Some(p) = f.as_polynomial() {
            if p.degree() > limit {
                return Err(CircleError::DegreeOverflow {
                    degree: p.degree(),
                    limit,
                });
            }
        }
    }
    let p = multiplication_toeplitz(&b.plus, tr).dense();
    let q = multiplication_toeplitz(&b.minus, tr).dense();
    let d = tr.dim();
    let m = Mat::from_fn(d, d, |i, j| {
        if tr.mode(j) >= 0 {
            p[(i, j)]
        } else {
            q[(i, j)]
        }
    });
    Ok(LinearOperator::on(tr.space().clone(), m)?)
}
