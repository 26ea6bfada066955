//! Dense complex linear operators on labelled finite-dimensional spaces.
//!
//! Hermitian eigendecompositions, functional calculus, spectral projections,
//! Schatten norms and singular-value rank decisions, backed by `faer`.

mod action;
mod error;
mod operator;
mod projection;
mod rank;
mod schatten;
mod space;
mod spectral;

pub use faer;
pub use faer::c64;

pub use action::{Action, BlockDiagonal};
pub use error::{LinopError, Result};
pub use operator::{norm_fro, trace, trace_of_product, LinearOperator};
pub use projection::{Projection, PROJECTION_TOL};
pub use rank::{
    fredholm_defect, kernel_projection, range_projection, singular_values, thin_svd, RankDecision,
    ThinSvd, MIN_GAP, RANK_TOL,
};
pub use schatten::{schatten_from_singular_values, schatten_norm};
pub use space::{BasisLabel, SpaceTag};
pub use spectral::{
    hermitian_eig, hermitian_eig_with, positive_spectral_projection,
    positive_spectral_projection_with, spectral_function, HermitianEigen, HERMITICITY_TOL,
};

/// Shorthand for a real complex number.
pub fn re(x: f64) -> c64 {
    c64::new(x, 0.0)
}
