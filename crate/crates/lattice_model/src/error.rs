use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LatticeError {
    #[error("ring size L={l} is below the minimum {min}")]
    SizeTooSmall { l: usize, min: usize },
    #[error("invalid lattice specification: {0}")]
    InvalidSpec(String),
    #[error("negative squared frequency {value:e} at mode {mode}")]
    NegativeEigenvalue { mode: usize, value: f64 },
    #[error("size {0} is odd")]
    OddSize(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("mode index out of range: {0}")]
    IndexOutOfRange(String),
    #[error(transparent)]
    Overlap(#[from] overlap_solver::OverlapError),
    #[error(transparent)]
    Kernel(#[from] wavelet_kernels::WaveletError),
}
