//! Independent cross-check of derivative overlaps by grid quadrature.
//!
//! Basis functions are sampled with the cascade recursion, differentiated by
//! central differences and integrated with a Riemann sum. The central
//! difference of a Daubechies function converges slowly, so
//! [`fd_overlap_extrapolated`] applies Aitken's Δ² to three resolutions.

use wavelet_kernels::{cascade_eval, FunctionKind, WaveletFamily};

use crate::Result;

/// A periodic basis function 2^{scale/2} φ(2^{scale} x − index).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisFn {
    pub kind: FunctionKind,
    pub scale: u32,
    pub index: i64,
}

impl BasisFn {
    pub fn scale_fn(scale: u32, index: i64) -> Self {
        Self { kind: FunctionKind::Scale, scale, index }
    }

    pub fn wavelet(scale: u32, index: i64) -> Self {
        Self { kind: FunctionKind::Wavelet, scale, index }
    }
}

fn derivative(family: &WaveletFamily, kind: FunctionKind, level: u32) -> Result<Vec<f64>> {
    let f = cascade_eval(family, kind, level)?;
    let s = f.samples();
    let inv = 0.5 / f.spacing();
    let at = |i: isize| if i < 0 || i as usize >= s.len() { 0.0 } else { s[i as usize] };
    Ok((0..s.len() as isize).map(|i| (at(i + 1) - at(i - 1)) * inv).collect())
}

/// ∫ ∂a ∂b dx over a ring of `ring` coarse sites, at grid resolution `level`.
pub fn fd_overlap(family: &WaveletFamily, a: BasisFn, b: BasisFn, ring: usize, level: u32) -> Result<f64> {
    let (a, b) = if a.scale >= b.scale { (a, b) } else { (b, a) };
    let shift = a.scale - b.scale;
    let da = derivative(family, a.kind, level)?;
    let db = derivative(family, b.kind, level + shift)?;
    let step = 1i64 << level;
    let period = (ring as i64) << b.scale;
    let mut total = 0.0;
    for wrap in -2..=2 {
        let bi = b.index - wrap * period;
        for (i, &va) in da.iter().enumerate() {
            // z = 2^{-shift}(y + a) − b on the grid of level + shift.
            let zi = i as i64 + a.index * step - (bi << shift) * step;
            if zi >= 0 && (zi as usize) < db.len() {
                total += va * db[zi as usize];
            }
        }
    }
    let scale = 2f64.powf(0.5 * a.scale as f64 + 1.5 * b.scale as f64) / step as f64;
    Ok(total * scale)
}

/// Aitken Δ² extrapolation of [`fd_overlap`] over levels − 4, − 2 and `level`.
pub fn fd_overlap_extrapolated(
    family: &WaveletFamily,
    a: BasisFn,
    b: BasisFn,
    ring: usize,
    level: u32,
) -> Result<f64> {
    let i0 = fd_overlap(family, a, b, ring, level - 4)?;
    let i1 = fd_overlap(family, a, b, ring, level - 2)?;
    let i2 = fd_overlap(family, a, b, ring, level)?;
    let denom = i2 - 2.0 * i1 + i0;
    if denom.abs() < 1e-300 || ((i2 - i1) / denom).abs() > 1e3 {
        return Ok(i2);
    }
    Ok(i2 - (i2 - i1).powi(2) / denom)
}
