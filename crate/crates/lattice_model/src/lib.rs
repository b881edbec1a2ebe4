//! Boundary and bulk lattice models.
//!
//! A [`LatticeSpec`] fixes the wavelet family, the number L of coarsest-scale
//! sites and the cutoff scale n, giving V = L·2^n modes on a periodic ring.
//! The boundary coupling matrix is circulant; the bulk coupling matrix is the
//! same quadratic form written in the periodic Daubechies basis, ordered as a
//! coarsest scale block followed by wavelet blocks r = 0..n−1.

mod coupling;
mod error;
mod modes;
mod transform;

pub use coupling::{boundary_coupling, boundary_spectrum, bulk_coupling, CouplingMatrix};
pub use error::LatticeError;
pub use modes::{Basis, LatticeSpec, ModeIndex};
pub use transform::{
    boundary_fourier_matrix, cross_basis_overlaps, sampled_wavelet_row, scale_row,
    wavelet_row, wavelet_transform_matrix, CrossBasisOverlaps, OverlapMode, OverlapRow,
};

pub type Result<T> = std::result::Result<T, LatticeError>;
