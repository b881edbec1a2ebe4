//! First rows of circulant boundary covariance blocks.

use lattice_model::CouplingMatrix;
use nalgebra::DMatrix;
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::{GaussianError, Result, ZeroModePolicy};

/// Decay-rate threshold κ·V above which massive rows use the shifted contour.
const CONTOUR_THRESHOLD: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Field {
    Phi,
    Pi,
}

/// Symmetric taps c_0..c_R of a circulant coupling row, so that
/// d²(k) = c_0 + 2Σ_{m≥1} c_m cos(mk).
fn taps(row: &[f64], reach: usize) -> Vec<f64> {
    let v = row.len();
    (0..=reach.min(v / 2)).map(|m| row[m]).collect()
}

fn dispersion_sq(taps: &[f64], k: Complex64) -> Complex64 {
    taps.iter()
        .enumerate()
        .skip(1)
        .fold(Complex64::new(taps[0], 0.0), |acc, (m, &c)| acc + 2.0 * c * (k * m as f64).cos())
}

/// Normal-mode frequencies of the circulant coupling.
pub(crate) fn frequencies(k: &CouplingMatrix) -> Result<Vec<f64>> {
    let row = k.circulant_row().ok_or_else(|| GaussianError::InvalidArgument("not circulant".into()))?;
    let t = taps(row, k.spec().family().overlap_reach());
    let v = row.len();
    let scale = t.iter().map(|x| x.abs()).sum::<f64>().max(1.0);
    (0..v)
        .map(|j| {
            let kj = 2.0 * std::f64::consts::PI * j as f64 / v as f64;
            let d2 = dispersion_sq(&t, Complex64::new(kj, 0.0)).re;
            if d2 < -1e-12 * scale {
                Err(GaussianError::NotPositive(d2))
            } else {
                Ok(d2.max(0.0).sqrt())
            }
        })
        .collect()
}

/// Mode weights (Φ, Π) for a normal mode of frequency d at inverse
/// temperature β (ground state when `None`); zero frequencies follow the
/// policy.
pub(crate) fn mode_weights(d: f64, beta: Option<f64>, policy: Option<ZeroModePolicy>, zero: bool) -> Result<(f64, f64)> {
    let d = if zero {
        match policy {
            None => return Err(GaussianError::SingularNoPolicy),
            Some(ZeroModePolicy::Deflated) => return Ok((0.0, 0.0)),
            Some(ZeroModePolicy::Regularized(eps)) => d.max(eps),
        }
    } else {
        match policy {
            Some(ZeroModePolicy::Regularized(eps)) => d.max(eps),
            _ => d,
        }
    };
    let c = match beta {
        None => 1.0,
        Some(b) => 1.0 / (b * d).tanh(),
    };
    Ok((0.5 * c / d, 0.5 * c * d))
}

fn zero_tolerance(freqs: &[f64]) -> f64 {
    1e-9 * freqs.iter().cloned().fold(0.0, f64::max).max(1.0)
}

/// Circulant first rows (Φ, Π) of the boundary covariance.
///
/// Massive ground states whose correlations decay faster than e^{-40/V} per
/// site are evaluated on a shifted Fourier contour, which keeps relative
/// precision for exponentially small entries; all other cases use the
/// direct normal-mode sum.
pub fn boundary_rows(
    k: &CouplingMatrix,
    beta: Option<f64>,
    policy: Option<ZeroModePolicy>,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if let Some(b) = beta {
        if !(b > 0.0 && b.is_finite()) {
            return Err(GaussianError::InvalidArgument(format!("beta must be positive, got {b}")));
        }
    }
    let row = k.circulant_row().ok_or_else(|| GaussianError::InvalidArgument("not circulant".into()))?;
    let v = row.len();
    let freqs = frequencies(k)?;
    let direct = direct_rows(&freqs, beta, policy)?;
    if k.spec().mass() > 0.0 && beta.is_none() {
        let t = taps(row, k.spec().family().overlap_reach());
        if let Some(kb) = branch_distance(&t) {
            if kb * v as f64 > CONTOUR_THRESHOLD {
                if let (Some(phi), Some(pi)) = (contour_row(&t, v, kb, Field::Phi), contour_row(&t, v, kb, Field::Pi)) {
                    let agree = |a: &[f64], b: &[f64]| {
                        a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-12 * b[0].abs().max(1.0))
                    };
                    if agree(&phi, &direct.0) && agree(&pi, &direct.1) {
                        return Ok((phi, pi));
                    }
                }
            }
        }
    }
    Ok(direct)
}

fn direct_rows(freqs: &[f64], beta: Option<f64>, policy: Option<ZeroModePolicy>) -> Result<(Vec<f64>, Vec<f64>)> {
    let v = freqs.len();
    let tol = zero_tolerance(freqs);
    let mut phi = Vec::with_capacity(v);
    let mut pi = Vec::with_capacity(v);
    for &d in freqs {
        let (a, b) = mode_weights(d, beta, policy, d <= tol)?;
        phi.push(Complex64::new(a, 0.0));
        pi.push(Complex64::new(b, 0.0));
    }
    let fft = FftPlanner::new().plan_fft_forward(v);
    fft.process(&mut phi);
    fft.process(&mut pi);
    let norm = 1.0 / v as f64;
    Ok((phi.iter().map(|c| c.re * norm).collect(), pi.iter().map(|c| c.re * norm).collect()))
}

/// Distance κ_b from the real axis of the nearest zero of d²(z), from the
/// roots w = e^{iz} of the polynomial w^R·d²(z).
fn branch_distance(taps: &[f64]) -> Option<f64> {
    let r = taps.iter().rposition(|&c| c != 0.0)?;
    if r == 0 {
        return None;
    }
    // Monic companion matrix of Σ_j a_j w^j with a_{R±m} = c_m.
    let deg = 2 * r;
    let coef = |j: usize| taps[j.abs_diff(r)];
    let lead = coef(deg);
    let companion = DMatrix::from_fn(deg, deg, |i, j| {
        if j == deg - 1 {
            -coef(i) / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    companion
        .complex_eigenvalues()
        .iter()
        .map(|w| -w.norm().ln())
        .filter(|&k| k > 0.0)
        .min_by(f64::total_cmp)
}

/// Periodic row C(Δ) = c(Δ) + c(V−Δ) of the infinite-lattice correlator
/// c(p) = (1/2π)∫F(k)e^{ikp}dk, with F = 1/(2d) for Φ and d/2 for Π,
/// sampled on Im k = κ_b − δ. Returns `None` if the square-root branch
/// cannot be followed continuously around the contour.
fn contour_row(taps: &[f64], v: usize, kb: f64, field: Field) -> Option<Vec<f64>> {
    let delta = (kb / 2.0).min(8.0 / v as f64);
    let kappa = kb - delta;
    let want = (4 * v).max((60.0 / delta).ceil() as usize);
    let n = want.next_power_of_two();
    let mut d: Vec<Complex64> = (0..n)
        .map(|j| {
            let k = Complex64::new(2.0 * std::f64::consts::PI * j as f64 / n as f64, kappa);
            dispersion_sq(taps, k).sqrt()
        })
        .collect();
    for j in 1..n {
        if (d[j] + d[j - 1]).norm() < (d[j] - d[j - 1]).norm() {
            d[j] = -d[j];
        }
    }
    if d[0].re < 0.0 {
        d.iter_mut().for_each(|x| *x = -*x);
    }
    if (d[n - 1] - d[0]).norm() > (d[n - 1] + d[0]).norm() {
        return None;
    }
    let mut buf: Vec<Complex64> = d
        .iter()
        .map(|&x| match field {
            Field::Phi => 0.5 / x,
            Field::Pi => 0.5 * x,
        })
        .collect();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let c: Vec<f64> = (0..=v).map(|p| buf[p].re / n as f64 * (-kappa * p as f64).exp()).collect();
    Some((0..v).map(|p| c[p] + c[v - p]).collect())
}
