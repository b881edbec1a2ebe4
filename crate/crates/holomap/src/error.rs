use circuit_emitter::CircuitError;
use gaussian_engine::GaussianError;
use holography::HolographyError;
use lattice_model::LatticeError;
use overlap_solver::OverlapError;
use thiserror::Error;
use wavelet_kernels::WaveletError;

/// Failures split by exit code: 1 for bad input, 2 for numerical failures.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }
}

fn validation(e: impl ToString) -> CliError {
    CliError::Validation(e.to_string())
}

fn numerical(e: impl ToString) -> CliError {
    CliError::Numerical(e.to_string())
}

impl From<WaveletError> for CliError {
    fn from(e: WaveletError) -> Self {
        match e {
            WaveletError::UnsupportedFamily(_) | WaveletError::InvalidArgument(_) => validation(e),
            _ => numerical(e),
        }
    }
}

impl From<OverlapError> for CliError {
    fn from(e: OverlapError) -> Self {
        match e {
            OverlapError::Kernel(k) => k.into(),
            OverlapError::SizeTooSmall { .. } | OverlapError::ScaleOutOfRange { .. } => validation(e),
            _ => numerical(e),
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::Overlap(o) => o.into(),
            LatticeError::Kernel(k) => k.into(),
            LatticeError::NegativeEigenvalue { .. } => numerical(e),
            _ => validation(e),
        }
    }
}

impl From<GaussianError> for CliError {
    fn from(e: GaussianError) -> Self {
        match e {
            GaussianError::Lattice(l) => l.into(),
            GaussianError::BadShape(..) | GaussianError::IndexOutOfRange(_) | GaussianError::InvalidArgument(_) => {
                validation(e)
            }
            _ => numerical(e),
        }
    }
}

impl From<HolographyError> for CliError {
    fn from(e: HolographyError) -> Self {
        match e {
            HolographyError::Gaussian(g) => g.into(),
            HolographyError::Lattice(l) => l.into(),
            HolographyError::Kernel(k) => k.into(),
            HolographyError::SlopeMismatch { .. } => numerical(e),
            _ => validation(e),
        }
    }
}

impl From<CircuitError> for CliError {
    fn from(e: CircuitError) -> Self {
        match e {
            CircuitError::Lattice(l) => l.into(),
            CircuitError::Gaussian(g) => g.into(),
            CircuitError::SingularNoPolicy | CircuitError::NotOrthogonal(_) => numerical(e),
            _ => validation(e),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        validation(e)
    }
}

impl From<toml::de::Error> for CliError {
    fn from(e: toml::de::Error) -> Self {
        validation(format!("config file: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        numerical(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        numerical(e)
    }
}
