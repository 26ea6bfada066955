//! Truncated Fourier model of `L²(S¹)` and of the cosphere bundle `L²(S*S¹)`.
//!
//! Modes `-N..=N` are kept. Multiplication operators are Toeplitz compressions,
//! the Hardy projection keeps modes `n ≥ 0`, and the Guillemin transform sends
//! `u` to `(P₊u, P₋u)` on the two sheets `ξ = ±1`.

mod error;
mod fourier;
mod function;
mod ops;
mod poly;
mod symbol;
mod toeplitz;
mod truncation;

pub use error::{CircleError, Result};
pub use fourier::{coefficients_of, coefficients_of_samples};
pub use function::{certificate_points, CircleFunction};
pub use ops::{
    circle_pdo_quantize, guillemin_transform_circle, hardy_projections, multiplication_operator,
    multiplication_operator_fn, multiplication_toeplitz, sheet_multiplication, szego_projection,
};
pub use poly::TrigPolynomial;
pub use symbol::CircleSymbol;
pub use toeplitz::Toeplitz;
pub use truncation::CircleTruncation;
