//! Curve with one conical point whose base is two points.
//!
//! The cylinder end `Ω × ℝ` carries the conormal operators, the double `2M`
//! is realized as a circle, and the pseudo-Guillemin transform `Γ` glues the
//! two pictures. `P = ΓB⁻¹Γ*` is the Toeplitz projection.

mod action;
mod conormal;
mod cutoffs;
mod error;
mod geometry;
mod guillemin;
pub mod profile;
mod projection;
mod quantize;
mod rational;
mod symbol;

pub use action::ConeAction;
pub use conormal::{conormal_operator, dual_symbol, sheet_conormal};
pub use cutoffs::CutoffSystem;
pub use error::{ConeError, Result};
pub use geometry::{
    ConeGeometry, DEFAULT_N, DEFAULT_T_CUT, DEFAULT_T_MINUS, DEFAULT_T_PLUS, SHEET_OMEGA_MINUS,
    SHEET_OMEGA_PLUS, SHEET_XI_MINUS, SHEET_XI_PLUS,
};
pub use guillemin::{double_multiplication, pseudo_guillemin};
pub use projection::{toeplitz_projection, toeplitz_quantize, ToeplitzProjection};
pub use quantize::cone_quantize;
pub use rational::{ConormalFamily, Polynomial, RationalSymbol};
pub use symbol::{ConeSymbol, MATCHING_TOL};
