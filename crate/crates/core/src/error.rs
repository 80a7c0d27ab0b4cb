use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension must be positive")]
    ZeroDimension,

    #[error("dimension {0} exceeds the supported maximum {1}")]
    DimensionTooLarge(usize, usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not antisymmetric (max deviation {0:e})")]
    NotAntisymmetric(f64),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("lattice basis is singular or nearly singular")]
    SingularBasis,

    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("eigensolver did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("potential is not closed: term with frequency {0:?} has nonzero exterior derivative")]
    NotClosed(Vec<i64>),

    #[error("potential is not real: term with frequency {0:?} has no conjugate partner")]
    NotReal(Vec<i64>),

    #[error("truncated basis of dimension {0} exceeds the cap {1}")]
    BasisTooLarge(usize, usize),

    #[error("mode window too small: no interior modes for frequency reach {0}")]
    NoInterior(i64),

    #[error("bound hypothesis violated: {0}")]
    Hypothesis(String),
}

pub type Result<T> = std::result::Result<T, Error>;
