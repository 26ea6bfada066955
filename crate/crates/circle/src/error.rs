use conelab_linop::LinopError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircleError {
    #[error("symbol degree {degree} exceeds the aliasing limit {limit}")]
    DegreeOverflow { degree: usize, limit: usize },
    #[error("denominator vanishes on the unit circle (min modulus {min_modulus:e})")]
    PoleOnCircle { min_modulus: f64 },
    #[error("symbol is not elliptic (min modulus {min_modulus:e})")]
    NotElliptic { min_modulus: f64 },
    #[error(transparent)]
    Linop(#[from] LinopError),
}

pub type Result<T> = std::result::Result<T, CircleError>;
