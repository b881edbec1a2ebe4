//! Gaussian states of the free scalar lattice.
//!
//! Ground and thermal covariance matrices Γ = Φ ⊕ Π built from a coupling
//! matrix K, with Φ = ½K^{-1/2}coth(βK^{1/2}) and Π = ½K^{1/2}coth(βK^{1/2}),
//! together with the information quantities derived from reduced blocks:
//! symplectic spectra, von Neumann entropies (bits), mutual information,
//! purity and the central-charge estimator.
//!
//! Boundary states keep the circulant structure and are evaluated from the
//! analytic normal-mode spectrum; massive boundary rows are computed on a
//! shifted Fourier contour so exponentially small correlations keep their
//! relative precision. Bulk (or any dense) states use a symmetric
//! eigendecomposition.

mod error;
mod info;
mod rows;
mod state;

pub use error::GaussianError;
pub use info::{
    central_charge, entropy_bits, mode_entropy, mutual_information, purity, symplectic_spectrum,
    two_mode_mutual_information, SymplecticForm,
};
pub use rows::boundary_rows;
pub use state::{ground_covariance, thermal_covariance, CovarianceState, ZeroModePolicy};

pub type Result<T> = std::result::Result<T, GaussianError>;
