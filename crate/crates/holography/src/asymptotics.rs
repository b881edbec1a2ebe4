//! Closed-form deep-bulk predictions.

use gaussian_engine::mode_entropy;
use std::f64::consts::{LN_2, PI};
use wavelet_kernels::{d_constant, wavelet_exp_average_at, ExpSign, WaveletFamily, DEFAULT_QUADRATURE_LEVEL};

use crate::{Field, HolographyError, Result};

/// Exponent a in the deep-bulk field variance 2^{n−r−a}.
pub const A_EXPONENT: f64 = 3.18;

/// Prefactor of the boundary imaginary-time Green's function 0.32τ/(Δ² + τ²).
pub const GREEN_PREFACTOR: f64 = 0.32;

/// Exponent b(K) = 0.75/K² + 0.16/K + 1.24 in the deep-bulk momentum variance 2^{r−n+b}.
pub fn b_exponent(k: usize) -> f64 {
    let k = k as f64;
    0.75 / (k * k) + 0.16 / k + 1.24
}

/// Radius of curvature estimate R ≈ 0.32K − 0.88/K + 0.43.
pub fn radius_estimate(k: usize) -> f64 {
    let k = k as f64;
    0.32 * k - 0.88 / k + 0.43
}

/// Massless deep-bulk correlator forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Asymptotic {
    /// C^{ΦΦ}((r,0),(r,j)) ≈ −2^{n−r}D_K/(4πK j^{2K}).
    PhiPhi,
    /// C^{ΠΠ}((r,0),(r,j)) ≈ 2^{r−n}(2K+1)D_K/(2π j^{2K+2}).
    PiPi,
    /// ⟨Φ²⟩ ≈ 2^{n−r−a}.
    SelfPhi,
    /// ⟨Π²⟩ ≈ 2^{r−n+b}.
    SelfPi,
}

fn check_scale(n: usize, r: usize) -> Result<()> {
    if r >= n {
        return Err(HolographyError::ScaleOutOfRange { r, n });
    }
    Ok(())
}

fn check_separation(family: &WaveletFamily, j: usize) -> Result<()> {
    if j <= family.support_end() {
        return Err(HolographyError::OutOfValidity(format!("separation j={j} must exceed 2K−1 = {}", family.support_end())));
    }
    Ok(())
}

/// Massless same-scale predictions at cutoff n, scale r and separation j.
pub fn massless_asymptotics(family: &WaveletFamily, n: usize, r: usize, j: usize, which: Asymptotic) -> Result<f64> {
    check_scale(n, r)?;
    let k = family.k() as f64;
    let depth = (n - r) as f64;
    let dk = d_constant(family);
    let jf = j as f64;
    Ok(match which {
        Asymptotic::PhiPhi => {
            check_separation(family, j)?;
            -depth.exp2() * dk / (4.0 * PI * k * jf.powf(2.0 * k))
        }
        Asymptotic::PiPi => {
            check_separation(family, j)?;
            (-depth).exp2() * (2.0 * k + 1.0) * dk / (2.0 * PI * jf.powf(2.0 * k + 2.0))
        }
        Asymptotic::SelfPhi => (depth - A_EXPONENT).exp2(),
        Asymptotic::SelfPi => (b_exponent(family.k()) - depth).exp2(),
    })
}

/// ⟨e^{−m̃x}⟩_w⟨e^{m̃x}⟩_w, refining the quadrature grid as m̃ grows.
fn exp_average_product(family: &WaveletFamily, mtilde: f64) -> Result<f64> {
    let needed = (mtilde / 0.1).log2().ceil().max(0.0) as u32;
    let level = needed.max(DEFAULT_QUADRATURE_LEVEL);
    Ok(wavelet_exp_average_at(family, mtilde, ExpSign::Minus, level)?
        * wavelet_exp_average_at(family, mtilde, ExpSign::Plus, level)?)
}

/// Massive same-scale predictions with renormalized mass m̃ = m0·2^{n−r}:
/// ΦΦ ≈ 2^{n−r}e^{−m̃j}/√(8πm̃j)·P and ΠΠ ≈ −2^{r−n}e^{−m̃j}√(m̃/(8πj³))·P,
/// with P = ⟨e^{−m̃x}⟩_w⟨e^{m̃x}⟩_w. Intended for m̃ ≳ 3 and j ≫ 2K−1.
pub fn massive_asymptotics(family: &WaveletFamily, n: usize, r: usize, j: usize, m0: f64, field: Field) -> Result<f64> {
    check_scale(n, r)?;
    check_separation(family, j)?;
    if !(m0 > 0.0) {
        return Err(HolographyError::OutOfValidity(format!("mass must be positive, got {m0}")));
    }
    let depth = (n - r) as f64;
    let mt = m0 * depth.exp2();
    let jf = j as f64;
    let p = exp_average_product(family, mt)?;
    let decay = (-mt * jf).exp();
    Ok(match field {
        Field::Phi => depth.exp2() * decay / (8.0 * PI * mt * jf).sqrt() * p,
        Field::Pi => -(-depth).exp2() * decay * (mt / (8.0 * PI * jf.powi(3))).sqrt() * p,
    })
}

/// Imaginary-time prediction 0.32·D_K·2^{(n−r)(2K+1)}/τ^{2K+1}, valid for τ > 2^{n−r}(2K−1).
pub fn temporal_asymptotic(family: &WaveletFamily, n: usize, r: usize, tau: f64) -> Result<f64> {
    check_scale(n, r)?;
    let depth = (n - r) as f64;
    let threshold = depth.exp2() * family.support_end() as f64;
    if !(tau > threshold) {
        return Err(HolographyError::OutOfValidity(format!("tau={tau} must exceed 2^(n−r)(2K−1) = {threshold}")));
    }
    let p = 2.0 * family.k() as f64 + 1.0;
    Ok(GREEN_PREFACTOR * d_constant(family) * (depth * p).exp2() / tau.powf(p))
}

/// Closed-form symplectic eigenvalues (σ₊, σ₋) of a same-scale deep-bulk pair at separation j.
pub fn pair_symplectic_closed_form(family: &WaveletFamily, j: usize) -> Result<(f64, f64)> {
    check_separation(family, j)?;
    let k = family.k() as f64;
    let (a, b) = (A_EXPONENT, b_exponent(family.k()));
    let dk = d_constant(family);
    let jf = j as f64;
    let x = a.exp2() * dk / (4.0 * PI * k);
    let y = (2.0 * k + 1.0) * dk / (2.0 * PI);
    let base = (-a / 2.0).exp2() / jf.powf(2.0 * k + 1.0);
    let j2k = jf.powf(2.0 * k);
    let j2k2 = b.exp2() * jf.powf(2.0 * k + 2.0);
    Ok((base * (j2k + x).sqrt() * (j2k2 - y).sqrt(), base * (j2k - x).sqrt() * (j2k2 + y).sqrt()))
}

/// Single-site entropy S₀ = S(2^{(b−a)/2}) in bits.
pub fn single_site_entropy_closed_form(family: &WaveletFamily) -> f64 {
    mode_entropy(((b_exponent(family.k()) - A_EXPONENT) / 2.0).exp2())
}

/// The constant F(K) of the leading-order same-scale mutual information.
pub fn f_constant(family: &WaveletFamily) -> f64 {
    let (a, b) = (A_EXPONENT, b_exponent(family.k()));
    let s0 = single_site_entropy_closed_form(family);
    (2.0 * a - 2.0).exp2() * s0 + 1.0 / ((2.0 - 2.0 * a).exp2() - (-a - b).exp2()) / LN_2
        - (2.0 * a - 3.0).exp2() * ((b - a).exp2() - 0.25).ln() / LN_2
}

/// Leading-order same-scale mutual information (D_K/(4πK))²F(K)/j^{4K}.
pub fn mutual_information_asymptotic(family: &WaveletFamily, j: usize) -> Result<f64> {
    check_separation(family, j)?;
    let k = family.k() as f64;
    let c = d_constant(family) / (4.0 * PI * k);
    Ok(c * c * f_constant(family) / (j as f64).powf(4.0 * k))
}
