use conelab_circle::CircleError;
use conelab_linop::LinopError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConeError {
    #[error("matching condition violated on sheet {sheet}: residual {residual:e}")]
    MatchingViolation { sheet: i32, residual: f64 },
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("denominator has a root {re} + {im}i on or near the real axis")]
    PoleOnRealAxis { re: f64, im: f64 },
    #[error("numerator and denominator degrees differ ({num} vs {den})")]
    DegreeMismatch { num: usize, den: usize },
    #[error("symbol is not elliptic (min modulus {min_modulus:e})")]
    NotElliptic { min_modulus: f64 },
    #[error("Gram operator of the transform is numerically singular (min eigenvalue {min_eigenvalue:e})")]
    NonInvertibleB { min_eigenvalue: f64 },
    #[error(transparent)]
    Circle(#[from] CircleError),
    #[error(transparent)]
    Linop(#[from] LinopError),
}

pub type Result<T> = std::result::Result<T, ConeError>;
