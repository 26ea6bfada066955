use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ResolutionError {
    #[error("maps do not form a complex: ‖A_{next}A_{index}‖ = {defect:e}")]
    NotAComplex {
        index: usize,
        next: usize,
        defect: f64,
    },
    #[error(
        "sequence is not exact at H_{position}: kernel dimension {kernel}, image dimension {image}"
    )]
    NotExact {
        position: usize,
        kernel: usize,
        image: usize,
    },
    #[error("roll-up is not invertible: smallest |eigenvalue| {min_modulus:e}")]
    NotInvertible { min_modulus: f64 },
    #[error("restricted map is not invertible: smallest singular value {min_singular:e}")]
    NotInvertibleRestriction { min_singular: f64 },
    #[error("infeasible ranks: {0}")]
    InfeasibleRanks(String),
    #[error("operator is not positive semidefinite: eigenvalue {eigenvalue:e}")]
    NotPsd { eigenvalue: f64 },
    #[error("invalid resolution: {0}")]
    Invalid(String),
    #[error(transparent)]
    Linop(#[from] conelab_linop::LinopError),
    #[error(transparent)]
    Circle(#[from] conelab_circle::CircleError),
    #[error(transparent)]
    Index(#[from] conelab_index::IndexError),
}

pub type Result<T> = std::result::Result<T, ResolutionError>;
