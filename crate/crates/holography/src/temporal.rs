use lattice_model::{boundary_spectrum, wavelet_row, LatticeSpec, ModeIndex};
use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::asymptotics::temporal_asymptotic;
use crate::{HolographyError, Result};

/// Exact mode sum or the deep-bulk power law.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TemporalMode {
    Exact,
    Asymptotic,
}

/// Imaginary-time boundary Green's function G(Δ, τ) = (1/V)Σ_k cos(2πΔk/V)e^{−d_kτ}
/// for Δ = 0..V, optionally without the k = 0 term.
pub fn boundary_green_row(spec: &LatticeSpec, tau: f64, deflate_zero_mode: bool) -> Result<Vec<f64>> {
    if !(tau >= 0.0) {
        return Err(HolographyError::InvalidArgument(format!("tau must be non-negative, got {tau}")));
    }
    let d = boundary_spectrum(spec)?;
    Ok(green_from_spectrum(&d, tau, deflate_zero_mode))
}

fn green_from_spectrum(d: &[f64], tau: f64, deflate_zero_mode: bool) -> Vec<f64> {
    let v = d.len();
    let mut buf: Vec<Complex64> = d.iter().map(|&x| Complex64::new((-x * tau).exp(), 0.0)).collect();
    if deflate_zero_mode {
        buf[0] = Complex64::new(0.0, 0.0);
    }
    FftPlanner::new().plan_fft_forward(v).process(&mut buf);
    buf.iter().map(|c| c.re / v as f64).collect()
}

fn autocorrelation(values: &[f64]) -> Vec<f64> {
    (0..values.len())
        .map(|lag| values.iter().zip(&values[lag..]).map(|(a, b)| a * b).sum())
        .collect()
}

fn contract(auto: &[f64], green: &[f64]) -> f64 {
    let v = green.len();
    auto.iter()
        .enumerate()
        .map(|(lag, &x)| if lag == 0 { x * green[0] } else { x * (green[lag % v] + green[(v - lag % v) % v]) })
        .sum()
}

/// Imaginary-time bulk correlator C^{a,a†}((r,j,τ),(r,j,0)).
pub fn temporal_correlator(spec: &LatticeSpec, r: usize, j: usize, tau: f64, mode: TemporalMode) -> Result<f64> {
    Ok(temporal_series(spec, r, j, &[tau], mode)?[0])
}

/// [`temporal_correlator`] over a grid of τ values, evaluated in parallel.
pub fn temporal_series(spec: &LatticeSpec, r: usize, j: usize, taus: &[f64], mode: TemporalMode) -> Result<Vec<f64>> {
    if r >= spec.scales() {
        return Err(HolographyError::ScaleOutOfRange { r, n: spec.scales() });
    }
    ModeIndex::Wavelet { r, m: j }.flat(spec)?;
    if let Some(bad) = taus.iter().find(|t| !(**t > 0.0)) {
        return Err(HolographyError::InvalidArgument(format!("tau must be positive, got {bad}")));
    }
    match mode {
        TemporalMode::Asymptotic => {
            taus.iter().map(|&t| temporal_asymptotic(spec.family(), spec.scales(), r, t)).collect()
        }
        TemporalMode::Exact => {
            let auto = autocorrelation(&wavelet_row(spec, r, j)?.values);
            let d = boundary_spectrum(spec)?;
            Ok(taus.par_iter().map(|&t| contract(&auto, &green_from_spectrum(&d, t, false))).collect())
        }
    }
}

/// Least-squares prefactor A in G(0, τ) ≈ A/τ for the massless boundary,
/// zero mode removed, over integer τ in [16, V/128]. Needs V ≥ 4096.
pub fn green_prefactor_fit(spec: &LatticeSpec) -> Result<f64> {
    if spec.mass() != 0.0 {
        return Err(HolographyError::InvalidArgument("prefactor fit needs a massless spec".into()));
    }
    let v = spec.modes();
    let (lo, hi) = (16, v / 128);
    if hi < 2 * lo {
        return Err(HolographyError::InvalidArgument(format!("prefactor fit needs V >= 4096, got {v}")));
    }
    let d = boundary_spectrum(spec)?;
    let terms: Vec<(f64, f64)> = (lo..=hi)
        .into_par_iter()
        .map(|t| {
            let inv = 1.0 / t as f64;
            (green_from_spectrum(&d, t as f64, true)[0] * inv, inv * inv)
        })
        .collect();
    let (num, den) = terms.iter().fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(num / den)
}
