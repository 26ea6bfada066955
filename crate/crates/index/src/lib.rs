//! Numerical index theory for Toeplitz quantizations.
//!
//! The character `Tr(a₀[P,a₁]⋯[P,a_N])` is evaluated densely or in factored
//! form through an orthonormal basis of `im P`. Winding numbers give the
//! independent oracles.

mod character;
mod cone;
mod error;
mod formula;
mod matrix;
mod oracle;
mod schatten;
mod winding;

pub use character::{
    character_constant, chern_connes, commutator_hs_norm, commutator_trace_dense,
    commutator_trace_factored, gamma_half_order, sqrt_2i, sqrt_i, CharacterInput,
};
pub use cone::{ConeIndexer, CONE_CHARACTER_ORDER};
pub use error::{IndexError, Result};
pub use formula::{
    calibration, formula_constant, index_constant, index_via_character,
    index_via_character_factored, IndexReport, RESIDUAL_LIMIT,
};
pub use matrix::{matrix_operator, tensor_projection, tensor_space};
pub use oracle::{
    cone_index_oracle, conormal_winding, interior_winding_along_curve, CONORMAL_ORIENTATION,
    INTERIOR_ORIENTATION,
};
pub use schatten::{schatten_decay_profile, SchattenRow, SCHATTEN_EXPONENTS};
pub use winding::{winding_number, winding_of, MAX_STEP};
