use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GaussianError {
    #[error("massless coupling matrix is singular and no zero-mode policy was given")]
    SingularNoPolicy,
    #[error("coupling matrix is not positive semidefinite: eigenvalue {0:e}")]
    NotPositive(f64),
    #[error("non-physical covariance: symplectic eigenvalue {0} < 1/2")]
    NonPhysical(f64),
    #[error("covariance must be square with even dimension, got {0}x{1}")]
    BadShape(usize, usize),
    #[error("mode index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Lattice(#[from] lattice_model::LatticeError),
}
