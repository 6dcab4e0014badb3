use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("cannot add scalars whose powers of N differ by a half-odd integer")]
    IncommensurableNExp,
    #[error("scalars over different fields (N={left} vs N={right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0}")]
    Parse(String),
}

/// Errors from the Heisenberg, theta and skein layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("N must be a positive even integer, got {0}")]
    BadN(i64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("submodule is not isotropic for the intersection form")]
    NotIsotropic,
    #[error("vector or submodule is not primitive (not a direct summand)")]
    NotPrimitive,
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("discrete Fourier transform is singular")]
    SingularFourier,
    #[error("matrix is singular")]
    Singular,
    #[error("invalid twist word: {0}")]
    BadWord(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Exit-code classes for the command line: usage errors map to 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Tangle(#[from] crate::tangle::TangleError),
    #[error(transparent)]
    Numeric(#[from] crate::numeric::NumericError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
