//! Derivative-overlap coupling coefficients.
//!
//! Connection coefficients Γ_{0,n} = ∫ s(x) ∂s(x−n) and the triple overlaps
//! D_{0,r,s} are fixed by the two-scale relation together with a handful of
//! normalisation rows; both are obtained from stacked least-squares systems
//! with a rank check. Scale-scale, scale-wavelet and wavelet-wavelet
//! derivative couplings on a periodic ring follow by refining to a common
//! fine scale.

mod error;
pub mod quadrature;
mod ring;
mod systems;

pub use error::OverlapError;
pub use ring::{circulant_overlap, dsw_matrix, dww_matrix, OverlapTables};
pub use systems::{dss_row, solve_gamma, solve_triple, GammaCoeffs, TripleOverlaps};

pub type Result<T> = std::result::Result<T, OverlapError>;
