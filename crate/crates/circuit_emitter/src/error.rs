use gaussian_engine::GaussianError;
use lattice_model::LatticeError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CircuitError {
    #[error("massless lattice: the zero mode needs infinite squeezing and deflation was not allowed")]
    SingularNoPolicy,
    #[error("matrix is not orthogonal (max |MᵀM − I| = {0:.3e})")]
    NotOrthogonal(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed program: {0}")]
    Malformed(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Gaussian(#[from] GaussianError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
