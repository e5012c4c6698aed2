use thiserror::Error;

/// Everything that can go wrong while building or combining the objects of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MpcError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid symplectic space: {0}")]
    InvalidSpace(&'static str),
    #[error("matrix is not symplectic (residual {residual:e})")]
    NonSymplectic { residual: f64 },
    #[error("operator does not commute with the complex structure (residual {residual:e})")]
    NotComplexLinear { residual: f64 },
    #[error("operator does not anticommute with the complex structure (residual {residual:e})")]
    NotAntilinear { residual: f64 },
    #[error("operator is not in GL+: hermitean part has eigenvalue {min_eigenvalue:e}")]
    NotInGLPlus { min_eigenvalue: f64 },
    #[error("matrix is singular")]
    Singular,
    #[error("|lambda^2 det C| deviates from 1 by {residual:e}")]
    NotUnimodular { residual: f64 },
    #[error("elements live in different symplectic spaces")]
    SpaceMismatch,
    #[error("matrix is not unitary for j (residual {residual:e})")]
    NotUnitary { residual: f64 },
    #[error("matrix is not pseudo-unitary for the given structure (residual {residual:e})")]
    NotPseudoUnitary { residual: f64 },
    #[error("invalid complex structure: {0}")]
    InvalidStructure(&'static str),
    #[error("C_g does not preserve the eigenspaces of the structure (residual {residual:e})")]
    EigenspaceMismatch { residual: f64 },
    #[error("matrix does not stabilise the subspace (residual {residual:e})")]
    NotStabilizing { residual: f64 },
    #[error("extracted shear block is not symmetric (residual {residual:e})")]
    NonSymmetricS { residual: f64 },
    #[error("isotropic dimension {dim} outside 1..{half}")]
    DimensionOutOfRange { dim: usize, half: usize },
    #[error("matrix is not in sp(V, Omega) (residual {residual:e})")]
    NotInSp { residual: f64 },
    #[error("weight is not dominant")]
    NotDominant,
    #[error("representation dimension {dim} exceeds cap {cap}")]
    DimensionOverflow { dim: u128, cap: usize },
    #[error("numerical result disagrees with prediction: {0}")]
    OracleMismatch(&'static str),
    #[error("intertwiner blocks are incomplete: missing level {level}")]
    IncompleteBlocks { level: usize },
    #[error("invalid spinor block: {0}")]
    InvalidSpec(&'static str),
    #[error("rank ambiguous: singular value ratio {ratio:e} is near the threshold {threshold:e}")]
    RankAmbiguous { ratio: f64, threshold: f64 },
}

pub type Result<T> = core::result::Result<T, MpcError>;
