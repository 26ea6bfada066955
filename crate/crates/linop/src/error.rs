use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinopError {
    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("space mismatch: expected `{expected}`, found `{found}`")]
    SpaceMismatch { expected: String, found: String },
    #[error("duplicate basis label {label} in space `{space}`")]
    DuplicateLabel { space: String, label: String },
    #[error("operator is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("operator is not hermitian: defect {defect:e} exceeds {tol:e}")]
    NotHermitian { defect: f64, tol: f64 },
    #[error("eigensolver did not converge on a {dim}x{dim} problem")]
    NoConvergence { dim: usize },
    #[error("eigenvalue {eigenvalue:e} lies in the ambiguity band around cut {zero_tol:e}")]
    SpectralGapViolation { eigenvalue: f64, zero_tol: f64 },
    #[error("ambiguous rank: gap {gap:e} below 10 at relative tolerance {tol:e}")]
    AmbiguousRank { gap: f64, tol: f64 },
    #[error("not a projection: idempotence defect {idempotence:e}, hermiticity defect {hermiticity:e}, tol {tol:e}")]
    NotProjection {
        idempotence: f64,
        hermiticity: f64,
        tol: f64,
    },
    #[error("operator is singular to working precision")]
    Singular,
}

pub type Result<T> = std::result::Result<T, LinopError>;
