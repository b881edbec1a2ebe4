use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OverlapError {
    #[error("linear system has no unique solution: singular value ratio {ratio:e}")]
    RankDeficiency { ratio: f64 },
    #[error("linear system residual {residual:e} exceeds tolerance")]
    Residual { residual: f64 },
    #[error("ring size L={l} is below the minimum {min}")]
    SizeTooSmall { l: usize, min: usize },
    #[error(transparent)]
    Kernel(#[from] wavelet_kernels::WaveletError),
    #[error("scale index out of range: l={l}, j={j}, n={n}")]
    ScaleOutOfRange { l: usize, j: usize, n: usize },
}
