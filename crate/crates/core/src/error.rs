use thiserror::Error;

use crate::doubleext::Violation;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is singular")]
    Singular,

    #[error("bilinear form is degenerate")]
    DegenerateForm,

    /// 1-indexed basis triple on which the cyclic sum is nonzero.
    #[error("Jacobi identity fails on basis triple (x{0}, x{1}, x{2})")]
    Jacobi(usize, usize, usize),

    #[error("vector is not isotropic")]
    NotIsotropic,

    #[error("vector is zero")]
    ZeroVector,

    #[error("metric Lie algebra is not flat")]
    NotFlat,

    #[error("Lie algebra is not 2-step nilpotent")]
    NotTwoStep,

    #[error("quadruple is not admissible: {}", Violation::join(.0))]
    Inadmissible(Vec<Violation>),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown catalog name `{0}`")]
    UnknownName(String),

    #[error("norm constraint violated: 3<z0,z0> = {lhs} but the bracket data give {rhs}")]
    NormConstraint { lhs: String, rhs: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid scalar field: {0}")]
    Field(String),
}

pub type Result<T> = std::result::Result<T, Error>;
