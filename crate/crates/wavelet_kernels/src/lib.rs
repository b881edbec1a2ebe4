//! Daubechies-K wavelet kernels.
//!
//! Filter tables for K = 3, 4, 5, dyadic-grid evaluation of the scale and
//! wavelet functions by the cascade recursion, and the closed moment
//! recursions that feed the asymptotic correlator formulas.

mod cascade;
mod error;
mod filters;
mod moments;

pub use cascade::{cascade_eval, DyadicFunction, FunctionKind};
pub use error::WaveletError;
pub use filters::{daubechies_filters, WaveletFamily};
pub use moments::{
    d_constant, scale_moment, wavelet_exp_average, wavelet_exp_average_at, wavelet_moment,
    ExpSign,
};

/// Default dyadic resolution used for quadrature.
pub const DEFAULT_QUADRATURE_LEVEL: u32 = 12;

/// Default dyadic resolution used for plotting output.
pub const DEFAULT_PLOT_LEVEL: u32 = 10;

pub type Result<T> = std::result::Result<T, WaveletError>;
