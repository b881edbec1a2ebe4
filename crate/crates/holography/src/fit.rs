use serde::{Deserialize, Serialize};

use crate::{HolographyError, Result};

/// Ordinary least-squares line y = intercept + slope·x.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual.
    pub residual: f64,
}

/// Fits a straight line to (x, y) pairs.
pub fn least_squares_line(xs: &[f64], ys: &[f64]) -> Result<LineFit> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(HolographyError::InsufficientSamples { got: xs.len().min(ys.len()), need: 2 });
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(HolographyError::InvalidArgument("abscissae are all equal".into()));
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = xs.iter().zip(ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    Ok(LineFit { slope, intercept, residual: (ss / n).sqrt() })
}

/// Spatial fit window: separations j with 2K−1 < j ≤ min(40, L·2^r/4).
pub fn spatial_fit_window(k: usize, l: usize, r: usize) -> (usize, usize) {
    (2 * k - 1, 40.min((l << r) / 4))
}

/// Temporal fit window: 2^{n−r}(2K−1) < τ ≤ L·2^{n−2}.
pub fn temporal_fit_window(k: usize, l: usize, n: usize, r: usize) -> (f64, f64) {
    (((2 * k - 1) << (n - r)) as f64, (l << n) as f64 / 4.0)
}

/// Radius of curvature and correlation lengths from same-scale mutual information.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureFit {
    pub radius: f64,
    pub xi_theta: f64,
    pub xi_tau: f64,
    pub s0: f64,
    pub slope: f64,
    pub intercept: f64,
    pub residual: f64,
}

/// Fits ln I = ln S₀ − (2R/ξ_θ)·ln(j/R) to samples (j, I).
///
/// Only samples with j > 2K−1 enter. The fitted slope −2R/ξ_θ must lie
/// within 10% of −4K; then R = exp((c − ln S₀)/|slope|) from the intercept c,
/// ξ_θ = 2R/|slope| and ξ_τ = 2R/(2K+1).
pub fn fit_curvature(samples: &[(f64, f64)], s0: f64, k: usize) -> Result<CurvatureFit> {
    if !(s0 > 0.0) {
        return Err(HolographyError::InvalidArgument(format!("S0 must be positive, got {s0}")));
    }
    let used: Vec<(f64, f64)> =
        samples.iter().copied().filter(|&(j, i)| j > (2 * k - 1) as f64 && i > 0.0).collect();
    if used.len() < 5 {
        return Err(HolographyError::InsufficientSamples { got: used.len(), need: 5 });
    }
    let xs: Vec<f64> = used.iter().map(|s| s.0.ln()).collect();
    let ys: Vec<f64> = used.iter().map(|s| s.1.ln()).collect();
    let line = least_squares_line(&xs, &ys)?;
    let expected = -4.0 * k as f64;
    if ((line.slope - expected) / expected).abs() > 0.1 {
        return Err(HolographyError::SlopeMismatch { slope: line.slope, expected });
    }
    let steep = -line.slope;
    let radius = ((line.intercept - s0.ln()) / steep).exp();
    Ok(CurvatureFit {
        radius,
        xi_theta: 2.0 * radius / steep,
        xi_tau: 2.0 * radius / (2.0 * k as f64 + 1.0),
        s0,
        slope: line.slope,
        intercept: line.intercept,
        residual: line.residual,
    })
}
