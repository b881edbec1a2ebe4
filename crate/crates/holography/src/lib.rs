//! Bulk observables of the exact holographic map.
//!
//! Bulk correlators are obtained by contracting boundary two-point functions
//! with the overlap rows of the wavelet transform. Alongside the exact route
//! this crate evaluates the closed-form asymptotics (massless, massive and
//! imaginary-time), geodesic distances in Euclidean AdS₃ and the log-log fit
//! that turns same-scale mutual information into a radius of curvature.

mod asymptotics;
mod correlators;
mod error;
mod fit;
mod geometry;
mod temporal;

pub use asymptotics::{
    b_exponent, massive_asymptotics, massless_asymptotics, mutual_information_asymptotic,
    pair_symplectic_closed_form, radius_estimate, single_site_entropy_closed_form, temporal_asymptotic,
    f_constant, Asymptotic, A_EXPONENT, GREEN_PREFACTOR,
};
pub use correlators::{boundary_corr_from_bulk, bulk_correlator, BulkCorrelator, Field};
pub use error::HolographyError;
pub use fit::{fit_curvature, least_squares_line, spatial_fit_window, temporal_fit_window, CurvatureFit, LineFit};
pub use geometry::{cross_scale_distance, geodesic_distance, same_scale_distance, temporal_distance, BulkGeometry, BulkPoint};
pub use temporal::{boundary_green_row, green_prefactor_fit, temporal_correlator, temporal_series, TemporalMode};

pub type Result<T> = std::result::Result<T, HolographyError>;
