use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("xi is not Hermitian (residual {residual:e}, tolerance {tolerance:e})")]
    Hermiticity { residual: f64, tolerance: f64 },

    #[error("eta is not symmetric (residual {residual:e}, tolerance {tolerance:e})")]
    Symmetry { residual: f64, tolerance: f64 },

    #[error("block Hamiltonian matrix is not positive definite (minimal eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("dimension mismatch: expected {expected} modes, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix has eigenvalue {re:e}{im:+e}i on or near the negative real axis; principal logarithm undefined")]
    BranchCut { re: f64, im: f64 },

    #[error("operation requires a one-mode transformation, got {0} modes")]
    NotOneMode(usize),

    #[error("operation requires a two-mode transformation, got {0} modes")]
    NotTwoMode(usize),

    #[error("total degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("quadrature frame u - v is singular (|det| = {det_modulus:e})")]
    SingularQuadratureFrame { det_modulus: f64 },

    #[error("truncated space of dimension {dim} exceeds the limit {limit}")]
    SpaceTooLarge { dim: usize, limit: usize },

    #[error("tail mass {tail_mass:e} beyond cutoff {cutoff} exceeds {tolerance:e}; try cutoff {suggested_cutoff}")]
    TailMassTooLarge { tail_mass: f64, tolerance: f64, cutoff: usize, suggested_cutoff: usize },

    #[error("generator is not anti-Hermitian (residual {residual:e})")]
    NotAntiHermitian { residual: f64 },

    #[error("inconsistent state description: {0}")]
    InconsistentState(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
