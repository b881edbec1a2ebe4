use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WaveletError {
    #[error("unsupported wavelet family K={0}; only K in {{3, 4, 5}} is tabulated")]
    UnsupportedFamily(usize),
    #[error("cascade initialisation failed: eigenvalue-1 residual {residual:e}")]
    ConvergenceFailure { residual: f64 },
    #[error("integrand varies faster than the grid: m*2^-J = {step} > 0.1")]
    Resolution { step: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
