use std::sync::Arc;

use conelab_linop::faer::{Mat, Side};
use conelab_linop::{
    c64, Action, LinearOperator, LinopError, Projection, SpaceTag, MIN_GAP, RANK_TOL,
};

use crate::error::{ConeError, Result};

/// Projection `P = ΓB⁻¹Γ*` onto `im Γ`, `B = Γ*Γ + Q`, kept in factored form.
///
/// The Gram operator `Γ*Γ = VΛV*` yields the orthonormal basis
/// `W = Γ V_r Λ_r^{−1/2}` of `im Γ`, so `P = WW*` without forming `B⁻¹`.
#[derive(Debug, Clone)]
pub struct ToeplitzProjection {
    gamma: LinearOperator,
    gram_values: Vec<f64>,
    gram_vectors: Mat<c64>,
    rank: usize,
    basis: Mat<c64>,
}

/// Builds the Toeplitz projection of `gamma`.
pub fn toeplitz_projection(gamma: &LinearOperator) -> Result<ToeplitzProjection> {
    ToeplitzProjection::new(gamma.clone())
}

impl ToeplitzProjection {
    pub fn new(gamma: LinearOperator) -> Result<Self> {
        let g = gamma.mat();
        let mut gram = g.adjoint() * g;
        let m = gram.nrows();
        for i in 0..m {
            for j in 0..i {
                let v = (gram[(i, j)] + gram[(j, i)].conj()) * 0.5;
                gram[(i, j)] = v;
                gram[(j, i)] = v.conj();
            }
            gram[(i, i)] = c64::new(gram[(i, i)].re, 0.0);
        }
        let eig = gram
            .self_adjoint_eigen(Side::Lower)
            .map_err(|_| LinopError::NoConvergence { dim: m })?;
        let values: Vec<f64> = (0..m).map(|i| eig.S()[i].re).collect();
        let vectors = eig.U().to_owned();

        let smax = values.last().copied().unwrap_or(0.0).max(0.0).sqrt();
        let threshold = RANK_TOL * smax;
        let sing = |i: usize| values[i].max(0.0).sqrt();
        let kernel_dim = (0..m).take_while(|&i| sing(i) <= threshold).count();
        let rank = m - kernel_dim;
        if kernel_dim > 0 && rank > 0 {
            let kept = sing(kernel_dim);
            let dropped = sing(kernel_dim - 1);
            let gap = if dropped > 0.0 {
                kept / dropped
            } else {
                f64::INFINITY
            };
            if gap < MIN_GAP {
                return Err(LinopError::AmbiguousRank { gap, tol: RANK_TOL }.into());
            }
        }
        if rank > 0 && values[kernel_dim] <= 1e-14 * values[m - 1] {
            return Err(ConeError::NonInvertibleB {
                min_eigenvalue: values[kernel_dim],
            });
        }
        let scaled = Mat::from_fn(m, rank, |i, j| {
            let k = kernel_dim + j;
            vectors[(i, k)] * (1.0 / values[k].sqrt())
        });
        let basis = g * &scaled;
        Ok(Self {
            gamma,
            gram_values: values,
            gram_vectors: vectors,
            rank,
            basis,
        })
    }

    pub fn gamma(&self) -> &LinearOperator {
        &self.gamma
    }

    pub fn space(&self) -> &Arc<SpaceTag> {
        self.gamma.codomain()
    }

    /// Orthonormal basis `W` of `im Γ` (ambient × rank).
    pub fn basis(&self) -> &Mat<c64> {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn kernel_dim(&self) -> usize {
        self.gram_values.len() - self.rank
    }

    /// Eigenvalues of `Γ*Γ`, ascending.
    pub fn gram_eigenvalues(&self) -> &[f64] {
        &self.gram_values
    }

    /// `Q`: projection onto `ker Γ`.
    pub fn kernel_projection(&self) -> Projection {
        let m = self.gram_values.len();
        let k = self.kernel_dim();
        let v = self.gram_vectors.as_ref().subcols(0, k);
        let q = v * v.adjoint();
        Projection::new(
            LinearOperator::on(self.gamma.domain().clone(), q).expect("domain dimension"),
            1e-9 * (m.max(1) as f64),
        )
        .expect("kernel projection from orthonormal eigenvectors")
    }

    /// `B⁻¹ = (Γ*Γ + Q)⁻¹`.
    pub fn inverse_gram(&self) -> LinearOperator {
        let m = self.gram_values.len();
        let k = self.kernel_dim();
        let v = &self.gram_vectors;
        let scaled = Mat::from_fn(m, m, |i, j| {
            let lam = if j < k { 1.0 } else { self.gram_values[j] };
            v[(i, j)] * (1.0 / lam)
        });
        LinearOperator::on(self.gamma.domain().clone(), &scaled * v.adjoint())
            .expect("domain dimension")
    }

    /// The projection `P = WW*` as a dense operator.
    pub fn projection(&self) -> Result<Projection> {
        Ok(Projection::from_orthonormal_columns(
            self.space().clone(),
            self.basis.clone(),
        )?)
    }

    /// Surrogate `P̃ = ΓΓ*`.
    pub fn surrogate(&self) -> LinearOperator {
        let g = self.gamma.mat();
        LinearOperator::on(self.space().clone(), g * g.adjoint()).expect("ambient dimension")
    }

    /// `‖P − P̃‖` in operator norm, `max |1 − λ|` over the nonzero Gram spectrum.
    pub fn surrogate_distance(&self) -> f64 {
        self.gram_values[self.kernel_dim()..]
            .iter()
            .map(|l| (1.0 - l).abs())
            .fold(0.0, f64::max)
    }

    /// `W* a W`: the Toeplitz operator of `a` in the basis of `im P`.
    pub fn compress(&self, action: &dyn Action) -> Mat<c64> {
        let aw = action.apply(self.basis.as_ref());
        self.basis.adjoint() * &aw
    }
}

/// `P·action·P` restricted to `im P`, in an orthonormal eigenbasis of `P`.
pub fn toeplitz_quantize(p: &Projection, action: &LinearOperator) -> Result<LinearOperator> {
    if action.domain() != p.space() || action.codomain() != p.space() {
        return Err(LinopError::SpaceMismatch {
            expected: p.space().name().to_string(),
            found: action.domain().name().to_string(),
        }
        .into());
    }
    let w = p.range_basis()?;
    let c = w.adjoint() * action.mat() * &w;
    let space = Arc::new(SpaceTag::indexed(
        format!("im {}", p.space().name()),
        w.ncols(),
    ));
    Ok(LinearOperator::on(space, c)?)
}
