use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HolographyError {
    #[error("scale r={r} out of range for n={n}")]
    ScaleOutOfRange { r: usize, n: usize },
    #[error("outside the validity range of the asymptotic form: {0}")]
    OutOfValidity(String),
    #[error("no geodesic formula for this pair of points: {0}")]
    UnsupportedPair(String),
    #[error("need at least {need} samples inside the fit window, got {got}")]
    InsufficientSamples { got: usize, need: usize },
    #[error("fitted slope {slope:.4} deviates from {expected} by more than 10%")]
    SlopeMismatch { slope: f64, expected: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Gaussian(#[from] gaussian_engine::GaussianError),
    #[error(transparent)]
    Lattice(#[from] lattice_model::LatticeError),
    #[error(transparent)]
    Kernel(#[from] wavelet_kernels::WaveletError),
}
