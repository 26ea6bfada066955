use conelab_circle::CircleError;
use conelab_cone::ConeError;
use conelab_linop::LinopError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IndexError {
    #[error("loop is undersampled: argument jump {jump:.3} at sample {index}")]
    UnderSampled { index: usize, jump: f64 },
    #[error("loop passes through zero at sample {index}")]
    ZeroOnLoop { index: usize },
    #[error("character order must be odd and positive, got {0}")]
    EvenOrder(usize),
    #[error("expected {expected} arguments, got {found}")]
    ArgumentCount { expected: usize, found: usize },
    #[error("symbol has no factorization into interior and conormal parts: {0}")]
    NotFactorized(String),
    #[error("symbol is not elliptic (min modulus {min_modulus:e})")]
    NotElliptic { min_modulus: f64 },
    #[error("index inconclusive: raw value {raw}, residual {residual:.3}")]
    Inconclusive { raw: f64, residual: f64 },
    #[error(transparent)]
    Linop(#[from] LinopError),
    #[error(transparent)]
    Circle(#[from] CircleError),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

pub type Result<T> = std::result::Result<T, IndexError>;
