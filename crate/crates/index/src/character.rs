use std::f64::consts::PI;

use conelab_linop::faer::{Mat, MatRef};
use conelab_linop::{c64, trace_of_product, Action, LinearOperator, LinopError, Projection};

use crate::error::{IndexError, Result};

/// Arguments `a₀, …, a_N` of the character, all on the space of `p`.
#[derive(Debug, Clone)]
pub struct CharacterInput<'a> {
    pub p: &'a Projection,
    pub args: Vec<&'a LinearOperator>,
}

impl<'a> CharacterInput<'a> {
    pub fn new(p: &'a Projection, args: Vec<&'a LinearOperator>) -> Result<Self> {
        let n = args.len().saturating_sub(1);
        if args.len() < 2 || n % 2 == 0 {
            return Err(IndexError::EvenOrder(n));
        }
        for a in &args {
            if a.domain() != p.space() || a.codomain() != p.space() {
                return Err(LinopError::SpaceMismatch {
                    expected: p.space().name().to_string(),
                    found: a.domain().name().to_string(),
                }
                .into());
            }
        }
        Ok(Self { p, args })
    }

    pub fn order(&self) -> usize {
        self.args.len() - 1
    }
}

/// `Γ(N/2 + 1)` for odd `N`.
pub fn gamma_half_order(n: usize) -> f64 {
    assert!(n % 2 == 1, "order must be odd");
    // Γ(k + 1/2) = (2k)! / (4^k k!) · √π with k = (N+1)/2
    let k = n.div_ceil(2);
    let mut v = PI.sqrt();
    for j in 0..k {
        v *= j as f64 + 0.5;
    }
    v
}

/// `√(2i)` on the principal branch: `2^{1/2} e^{iπ/4} = 1 + i`.
pub fn sqrt_2i() -> c64 {
    c64::new(1.0, 1.0)
}

/// `√i` on the principal branch.
pub fn sqrt_i() -> c64 {
    c64::from_polar(1.0, 0.25 * PI)
}

fn sign_n(n: usize) -> f64 {
    if (n * (n - 1) / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Normalization of the character: `√(2i)·(−1)^{N(N−1)/2}/Γ(N/2+1)`.
pub fn character_constant(n: usize) -> c64 {
    sqrt_2i() * (sign_n(n) / gamma_half_order(n))
}

/// `Tr(a₀[P,a₁]⋯[P,a_N])` from dense matrices, trace taken in ascending index order.
pub fn commutator_trace_dense(p: MatRef<'_, c64>, args: &[MatRef<'_, c64>]) -> c64 {
    let mut acc: Mat<c64> = args[0].to_owned();
    for a in &args[1..args.len() - 1] {
        let c = p * *a - *a * p;
        acc = &acc * &c;
    }
    let last = args[args.len() - 1];
    let c = p * last - last * p;
    trace_of_product(acc.as_ref(), c.as_ref())
}

/// The character `ch(a₀, …, a_N)` of the projection.
pub fn chern_connes(inp: &CharacterInput<'_>) -> c64 {
    let mats: Vec<MatRef<'_, c64>> = inp.args.iter().map(|a| a.mat()).collect();
    character_constant(inp.order()) * commutator_trace_dense(inp.p.mat(), &mats)
}

/// `Tr(a₀[P,a₁]⋯[P,a_N])` for `P = WW*` with orthonormal `W`, using
/// `[P,a] = L R*`, `L = [W | aW]`, `R = [a*W | −W]`, so the trace is that of
/// `(R_N* a₀ L₁)(R₁* L₂)⋯(R_{N−1}* L_N)`, a product of `2r × 2r` matrices.
pub fn commutator_trace_factored(w: MatRef<'_, c64>, args: &[&dyn Action]) -> c64 {
    let n = args.len() - 1;
    let r = w.ncols();
    let rows = w.nrows();
    let pair = |a: &dyn Action| -> (Mat<c64>, Mat<c64>) {
        let aw = a.apply(w);
        let asw = a.apply_adjoint(w);
        let mut l = Mat::<c64>::zeros(rows, 2 * r);
        l.as_mut().subcols_mut(0, r).copy_from(w);
        l.as_mut().subcols_mut(r, r).copy_from(&aw);
        let mut rr = Mat::<c64>::zeros(rows, 2 * r);
        rr.as_mut().subcols_mut(0, r).copy_from(&asw);
        for j in 0..r {
            for i in 0..rows {
                rr[(i, r + j)] = -w[(i, j)];
            }
        }
        (l, rr)
    };
    let factors: Vec<(Mat<c64>, Mat<c64>)> = args[1..].iter().map(|a| pair(*a)).collect();
    let a0l1 = args[0].apply(factors[0].0.as_ref());
    let mut acc = factors[n - 1].1.adjoint() * &a0l1;
    for k in 1..n - 1 {
        let m = factors[k - 1].1.adjoint() * &factors[k].0;
        acc = &acc * &m;
    }
    if n == 1 {
        return conelab_linop::trace(acc.as_ref());
    }
    let last = factors[n - 2].1.adjoint() * &factors[n - 1].0;
    trace_of_product(acc.as_ref(), last.as_ref())
}

/// `‖[P, a]‖₂` for `P = WW*`: `‖[P,a]‖₂² = ‖aW‖² + ‖a*W‖² − 2‖W*aW‖²`.
pub fn commutator_hs_norm(w: MatRef<'_, c64>, a: &dyn Action) -> f64 {
    let aw = a.apply(w);
    let asw = a.apply_adjoint(w);
    let waw = w.adjoint() * &aw;
    let n2 = |m: MatRef<'_, c64>| conelab_linop::norm_fro(m).powi(2);
    (n2(aw.as_ref()) + n2(asw.as_ref()) - 2.0 * n2(waw.as_ref()))
        .max(0.0)
        .sqrt()
}
