//! Resolutions of a projection by exact sequences of Hilbert modules, the
//! rolled-up operator `D = A + A* + P + (−1)^{n+1}P̃` and the comparison of
//! the Toeplitz quantizations by `P` and by `P₊(D)`.
//!
//! Modules are `L²(S¹) ⊗ ℂ^d` truncated to finitely many modes, with the
//! circle algebra acting on the first factor. Unbounded complexes are modelled
//! by maps whose norms grow with the truncation.

mod bounded;
mod equivalence;
mod error;
mod induction;
mod module;
mod quadrature;
mod reduction;
mod synth;
mod unbounded;

pub use bounded::{
    dual_projection, projection_distance, roll_up, BoundedResolution, ResolutionCertificate,
    RollUp, COMPLEX_TOL, INVERTIBILITY_TOL, PROJECTION_MATCH_TOL,
};
pub use equivalence::{circle_battery, equivalence_test, BatterySymbol, EquivalenceRow};
pub use error::{ResolutionError, Result};
pub use induction::{inductive_step, InductionStep};
pub use module::{diagonal_action, direct_sum_space, offsets, HilbertModule};
pub use quadrature::{inverse_sqrt_quadrature, DEFAULT_NODES};
pub use reduction::{reduction_unitary, Reduction};
pub use synth::{
    constant_complex, feasible_kernels, rank_chain, synth_resolution, synth_shift_index,
    ConstantComplex, MAX_CONDITION,
};
pub use unbounded::{
    bounded_normalization, growth_certificate, laplacian_splitting_defect, laplacians,
    normalization_report, unbounded_roll_up, unbounded_roll_up_check, GrowthRow,
    NormalizationReport, RollUpComparison, UnboundedResolution,
};
