use std::f64::consts::FRAC_1_SQRT_2;

use crate::{cascade_eval, FunctionKind, Result, WaveletError, WaveletFamily};

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn int_pow(base: usize, exp: usize) -> f64 {
    (base as f64).powi(exp as i32)
}

fn scale_moments_upto(family: &WaveletFamily, b_max: usize) -> Vec<f64> {
    let h = family.h();
    let mut m = vec![1.0];
    for b in 1..=b_max {
        let mut acc = 0.0;
        for (c, &mc) in m.iter().enumerate() {
            let filt: f64 = (1..h.len()).map(|k| h[k] * int_pow(k, b - c)).sum();
            acc += binomial(b, c) * filt * mc;
        }
        m.push(acc * FRAC_1_SQRT_2 / ((1u64 << b) as f64 - 1.0));
    }
    m
}

/// Scale-function moment ⟨x^b⟩_s = ∫ x^b s(x) dx from the closed recursion.
pub fn scale_moment(family: &WaveletFamily, b: usize) -> f64 {
    scale_moments_upto(family, b)[b]
}

/// Wavelet moment ⟨x^a⟩_w, expressed through scale moments.
///
/// Vanishes (to rounding) for a < K.
pub fn wavelet_moment(family: &WaveletFamily, a: usize) -> f64 {
    let m = scale_moments_upto(family, a);
    let g = family.g();
    let mut acc = 0.0;
    for (j, &gj) in g.iter().enumerate() {
        for (b, &mb) in m.iter().enumerate() {
            acc += gj * binomial(a, b) * int_pow(j, a - b) * mb;
        }
    }
    acc * FRAC_1_SQRT_2 / (1u64 << a) as f64
}

/// D_K = ⟨x^K⟩_w² · C(2K, K).
pub fn d_constant(family: &WaveletFamily) -> f64 {
    let k = family.k();
    wavelet_moment(family, k).powi(2) * binomial(2 * k, k)
}

/// Sign of the exponent in ⟨e^{±m̃x}⟩_w.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpSign {
    Plus,
    Minus,
}

/// ∫ e^{±m̃x} w(x) dx by Riemann quadrature at the default level.
pub fn wavelet_exp_average(family: &WaveletFamily, mtilde: f64, sign: ExpSign) -> Result<f64> {
    wavelet_exp_average_at(family, mtilde, sign, crate::DEFAULT_QUADRATURE_LEVEL)
}

/// ∫ e^{±m̃x} w(x) dx by Riemann quadrature on cascade samples at `level`.
///
/// Fails with [`WaveletError::Resolution`] when m̃·2^{-J} > 0.1.
pub fn wavelet_exp_average_at(
    family: &WaveletFamily,
    mtilde: f64,
    sign: ExpSign,
    level: u32,
) -> Result<f64> {
    if !(mtilde > 0.0) || !mtilde.is_finite() {
        return Err(WaveletError::InvalidArgument(format!("mtilde must be positive, got {mtilde}")));
    }
    let step = mtilde * (-(level as f64)).exp2();
    if step > 0.1 {
        return Err(WaveletError::Resolution { step });
    }
    let w = cascade_eval(family, FunctionKind::Wavelet, level)?;
    let rate = match sign {
        ExpSign::Plus => mtilde,
        ExpSign::Minus => -mtilde,
    };
    Ok(w.integrate(|x| (rate * x).exp()))
}
