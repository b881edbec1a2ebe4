use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

use crate::{HolographyError, Result};

/// A bulk degree of freedom at scale r, position m and imaginary time τ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BulkPoint {
    pub r: usize,
    pub m: usize,
    pub tau: Option<f64>,
}

impl BulkPoint {
    pub fn new(r: usize, m: usize) -> Self {
        Self { r, m, tau: None }
    }

    pub fn at_time(self, tau: f64) -> Self {
        Self { tau: Some(tau), ..self }
    }

    fn time(&self) -> f64 {
        self.tau.unwrap_or(0.0)
    }
}

/// Ring size L and cutoff n fixing the AdS₃ embedding of bulk points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BulkGeometry {
    pub l: usize,
    pub n: usize,
}

impl BulkGeometry {
    pub fn new(l: usize, n: usize) -> Self {
        Self { l, n }
    }

    /// Radial coordinate ρ = L·2^r/(2π).
    pub fn rho(&self, p: &BulkPoint) -> f64 {
        (self.l << p.r) as f64 / (2.0 * PI)
    }

    /// Angular coordinate θ = 2πm/(L·2^r).
    pub fn theta(&self, p: &BulkPoint) -> f64 {
        2.0 * PI * p.m as f64 / (self.l << p.r) as f64
    }

    fn check(&self, p: &BulkPoint) -> Result<()> {
        if p.r >= self.n {
            return Err(HolographyError::ScaleOutOfRange { r: p.r, n: self.n });
        }
        if p.m >= self.l << p.r {
            return Err(HolographyError::InvalidArgument(format!("position {} outside scale {}", p.m, p.r)));
        }
        if p.tau.is_some_and(|t| !(t >= 0.0)) {
            return Err(HolographyError::InvalidArgument("tau must be non-negative".into()));
        }
        Ok(())
    }
}

/// Geodesic distance between two bulk points for radius of curvature R.
///
/// Equal-time pairs at one scale use R·arccosh(1 + 2ρ²/R²·sin²(Δθ/2)); equal-time
/// pairs on one ray use R|asinh(ρ₁/R) − asinh(ρ₂/R)|; a point and its own
/// imaginary-time translate use 2R ln(|Δτ|·2^{r−n}/R). Other pairs are
/// unsupported.
pub fn geodesic_distance(a: &BulkPoint, b: &BulkPoint, radius: f64, geom: &BulkGeometry) -> Result<f64> {
    if !(radius > 0.0) {
        return Err(HolographyError::InvalidArgument(format!("radius must be positive, got {radius}")));
    }
    geom.check(a)?;
    geom.check(b)?;
    let dtau = (a.time() - b.time()).abs();
    let (ra, rb) = (geom.rho(a), geom.rho(b));
    let (ta, tb) = (geom.theta(a), geom.theta(b));
    let same_angle = (ta - tb).abs() < 1e-12;
    if dtau == 0.0 {
        if a.r == b.r {
            let s = ((ta - tb) / 2.0).sin();
            return Ok(radius * (1.0 + 2.0 * (ra / radius).powi(2) * s * s).acosh());
        }
        if same_angle {
            return Ok(radius * ((ra / radius).asinh() - (rb / radius).asinh()).abs());
        }
        return Err(HolographyError::UnsupportedPair(format!("{a:?} and {b:?}")));
    }
    if a.r == b.r && a.m == b.m {
        return temporal_distance(dtau, a.r, geom.n, radius);
    }
    Err(HolographyError::UnsupportedPair(format!("{a:?} and {b:?}")))
}

/// Deep-bulk same-scale distance 2R ln(j/R).
pub fn same_scale_distance(j: f64, radius: f64) -> f64 {
    2.0 * radius * (j / radius).ln()
}

/// Deep-bulk distance R|Δr| ln 2 between points on one ray.
pub fn cross_scale_distance(dr: usize, radius: f64) -> f64 {
    radius * dr as f64 * LN_2
}

/// Imaginary-time distance 2R ln(τ·2^{r−n}/R), valid for τ·2^{r−n} ≫ R.
pub fn temporal_distance(tau: f64, r: usize, n: usize, radius: f64) -> Result<f64> {
    let arg = tau * 2f64.powi(r as i32 - n as i32) / radius;
    if arg <= 1.0 {
        return Err(HolographyError::OutOfValidity(format!("tau·2^(r−n)/R = {arg:.3} must exceed 1")));
    }
    Ok(2.0 * radius * arg.ln())
}
