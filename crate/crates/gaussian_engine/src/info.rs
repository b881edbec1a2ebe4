use lattice_model::{Basis, ModeIndex};
use nalgebra::{Cholesky, DMatrix, Dyn};
use std::f64::consts::LN_2;

use crate::{CovarianceState, GaussianError, Result};

const CLIP: f64 = 1e-9;
const PHYSICAL: f64 = 1e-6;
const SERIES_ORDER: usize = 12;
const SERIES_RADIUS: f64 = 0.05;

/// Symplectic form Ω = [[0, I], [−I, 0]] on N modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymplecticForm {
    pub modes: usize,
}

impl SymplecticForm {
    pub fn new(modes: usize) -> Self {
        Self { modes }
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.modes;
        DMatrix::from_fn(2 * n, 2 * n, |i, j| {
            if j == i + n {
                1.0
            } else if i == j + n {
                -1.0
            } else {
                0.0
            }
        })
    }
}

fn check_shape(g: &DMatrix<f64>) -> Result<usize> {
    let (r, c) = g.shape();
    if r != c || r % 2 != 0 || r == 0 {
        return Err(GaussianError::BadShape(r, c));
    }
    Ok(r / 2)
}

fn cholesky(m: DMatrix<f64>) -> Result<Cholesky<f64, Dyn>> {
    Cholesky::new(m).ok_or(GaussianError::NonPhysical(0.0))
}

fn sym_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    let mut e: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    e.sort_by(f64::total_cmp);
    e
}

/// Positive symplectic eigenvalues σ_i of a 2N×2N covariance, ascending.
///
/// Block-diagonal inputs use σ² = eig(LᵀΠL) with Φ = LLᵀ; general inputs
/// use the doubly degenerate eigenvalues of −(LᵀΩL)² with Γ = LLᵀ.
pub fn symplectic_spectrum(gamma: &DMatrix<f64>) -> Result<Vec<f64>> {
    let n = check_shape(gamma)?;
    let cross = gamma.view((0, n), (n, n)).amax().max(gamma.view((n, 0), (n, n)).amax());
    let mut sigma: Vec<f64> = if cross == 0.0 {
        let l = cholesky(gamma.view((0, 0), (n, n)).clone_owned())?.unpack();
        let pi = gamma.view((n, n), (n, n));
        let m = l.transpose() * pi * &l;
        sym_eigenvalues((&m + m.transpose()) * 0.5).into_iter().map(|x| x.max(0.0).sqrt()).collect()
    } else {
        let l = cholesky(gamma.clone())?.unpack();
        let a = l.transpose() * SymplecticForm::new(n).matrix() * &l;
        let ata = a.transpose() * &a;
        let e = sym_eigenvalues((&ata + ata.transpose()) * 0.5);
        e.iter().skip(1).step_by(2).map(|x| x.max(0.0).sqrt()).collect()
    };
    for s in sigma.iter_mut() {
        if *s < 0.5 - PHYSICAL {
            return Err(GaussianError::NonPhysical(*s));
        }
        if *s < 0.5 && *s >= 0.5 - CLIP {
            *s = 0.5;
        }
    }
    Ok(sigma)
}

/// Entropy in bits of a single mode with symplectic eigenvalue σ.
pub fn mode_entropy(sigma: f64) -> f64 {
    if sigma <= 0.5 {
        return 0.0;
    }
    let (p, m) = (sigma + 0.5, sigma - 0.5);
    (p * p.ln() - m * m.ln()) / LN_2
}

/// Von Neumann entropy S(ρ_A) in bits.
pub fn entropy_bits(gamma: &DMatrix<f64>) -> Result<f64> {
    Ok(symplectic_spectrum(gamma)?.into_iter().map(mode_entropy).sum())
}

/// Purity tr ρ_A² = 1/(2^ℓ √det Γ_A) = Π_i 1/(2σ_i).
pub fn purity(gamma: &DMatrix<f64>) -> Result<f64> {
    let log: f64 = symplectic_spectrum(gamma)?.iter().map(|s| (2.0 * s).ln()).sum();
    Ok((-log).exp())
}

/// Mutual information I(a:b) = S(a) + S(b) − S(ab) in bits.
pub fn mutual_information(state: &CovarianceState, a: ModeIndex, b: ModeIndex) -> Result<f64> {
    let (ia, ib) = (state.flat_index(a)?, state.flat_index(b)?);
    if ia == ib {
        return Err(GaussianError::InvalidArgument("mutual information needs distinct modes".into()));
    }
    two_mode_mutual_information(
        state.phi_entry(ia, ia),
        state.phi_entry(ib, ib),
        state.phi_entry(ia, ib),
        state.pi_entry(ia, ia),
        state.pi_entry(ib, ib),
        state.pi_entry(ia, ib),
    )
}

/// Mutual information in bits of two modes with Φ_A = [[p1, x], [x, p2]] and
/// Π_A = [[q1, y], [y, q2]].
///
/// Weakly correlated pairs are evaluated by expanding the entropies in the
/// logarithmic shifts δ± of the pair's symplectic eigenvalues, which avoids
/// the cancellation in S(a) + S(b) − S(ab); other pairs use the spectra.
pub fn two_mode_mutual_information(p1: f64, p2: f64, x: f64, q1: f64, q2: f64, y: f64) -> Result<f64> {
    let mi = match series_mutual_information(p1, p2, x, q1, q2, y) {
        Some(v) => v,
        None => {
            let single = |p: f64, q: f64| -> Result<f64> {
                entropy_bits(&DMatrix::from_row_slice(2, 2, &[p, 0.0, 0.0, q]))
            };
            let pair = DMatrix::from_row_slice(
                4,
                4,
                &[p1, x, 0.0, 0.0, x, p2, 0.0, 0.0, 0.0, 0.0, q1, y, 0.0, 0.0, y, q2],
            );
            single(p1, q1)? + single(p2, q2)? - entropy_bits(&pair)?
        }
    };
    if mi < 0.0 && mi >= -CLIP {
        Ok(0.0)
    } else {
        Ok(mi)
    }
}

fn series_mutual_information(p1: f64, p2: f64, x: f64, q1: f64, q2: f64, y: f64) -> Option<f64> {
    let (mut p1, mut p2, mut q1, mut q2) = (p1, p2, q1, q2);
    let (mut a, mut b) = (p1 * q1, p2 * q2);
    if a < b {
        std::mem::swap(&mut p1, &mut p2);
        std::mem::swap(&mut q1, &mut q2);
        std::mem::swap(&mut a, &mut b);
    }
    if !(b > 0.25) || p1 <= 0.0 || p2 <= 0.0 || q1 <= 0.0 || q2 <= 0.0 {
        return None;
    }
    let xx = (a + b) * x * y + p1 * p2 * y * y + q1 * q2 * x * x;
    let h = 0.5 * (a - b);
    let root = (h * h + xx).sqrt();
    if !root.is_finite() || root + h <= 0.0 {
        return None;
    }
    let rh = xx / (root + h);
    let (ep, em) = (x * y + rh, x * y - rh);
    let dp = 0.5 * (ep / a).ln_1p();
    let dm = 0.5 * (em / b).ln_1p();
    let (sa, sb) = (a.sqrt(), b.sqrt());
    let within = |d: f64, s: f64| d.is_finite() && d.abs() * s < SERIES_RADIUS * (s - 0.5);
    if !within(dp, sa) || !within(dm, sb) {
        return None;
    }
    let s = 0.5 * ((-x * x / (p1 * p2)).ln_1p() + (-y * y / (q1 * q2)).ln_1p());
    let c1 = log_shift_coefficients(sa, SERIES_ORDER);
    let c2 = log_shift_coefficients(sb, SERIES_ORDER);
    let qq = dp * dm;
    let mut power = vec![2.0, s];
    for k in 2..=SERIES_ORDER {
        power.push(s * power[k - 1] - qq * power[k - 2]);
    }
    let mut dmk = 1.0;
    let mut mi = 0.0;
    for k in 1..=SERIES_ORDER {
        dmk *= dm;
        mi -= c1[k] * power[k] + (c2[k] - c1[k]) * dmk;
    }
    Some(mi)
}

/// Taylor coefficients in δ of S(σe^δ), orders 0..=order.
fn log_shift_coefficients(sigma: f64, order: usize) -> Vec<f64> {
    let mut deriv = vec![mode_entropy(sigma), ((sigma + 0.5).ln() - (sigma - 0.5).ln()) / LN_2];
    let mut fact = 1.0;
    for k in 2..=order {
        let m = (k - 1) as i32;
        if k > 2 {
            fact *= (k - 2) as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        deriv.push(sign * fact * ((sigma + 0.5).powi(-m) - (sigma - 0.5).powi(-m)) / LN_2);
    }
    // Series of σ(e^δ − 1).
    let mut shift = vec![0.0; order + 1];
    let mut f = 1.0;
    for (k, s) in shift.iter_mut().enumerate().skip(1) {
        f *= k as f64;
        *s = sigma / f;
    }
    let mut out = vec![0.0; order + 1];
    out[0] = deriv[0];
    let mut power = vec![0.0; order + 1];
    power[0] = 1.0;
    let mut fact_m = 1.0;
    for m in 1..=order {
        fact_m *= m as f64;
        let mut next = vec![0.0; order + 1];
        for i in 0..=order {
            if power[i] == 0.0 {
                continue;
            }
            for j in 1..=order - i {
                next[i + j] += power[i] * shift[j];
            }
        }
        power = next;
        for i in 0..=order {
            out[i] += deriv[m] / fact_m * power[i];
        }
    }
    out
}

fn interval_log_det(state: &CovarianceState, len: usize) -> Result<f64> {
    let phi = DMatrix::from_fn(len, len, |a, b| state.phi_entry(a, b));
    let pi = DMatrix::from_fn(len, len, |a, b| state.pi_entry(a, b));
    let log_det = |m: DMatrix<f64>| -> Result<f64> {
        Ok(2.0 * cholesky(m)?.l().diagonal().iter().map(|x| x.ln()).sum::<f64>())
    };
    Ok(log_det(phi)? + log_det(pi)?)
}

/// Central-charge estimate from two boundary intervals of lengths ℓ1 < ℓ2:
/// c = 2/ln(ℓ2/ℓ1)·(ln[det Γ_{A2}/det Γ_{A1}] + 2(ℓ2−ℓ1)ln 2).
pub fn central_charge(state: &CovarianceState, l1: usize, l2: usize) -> Result<f64> {
    if state.basis() != Basis::Boundary {
        return Err(GaussianError::InvalidArgument("central charge needs a boundary state".into()));
    }
    if l1 == 0 || l2 <= l1 || l2 > state.modes() {
        return Err(GaussianError::InvalidArgument(format!(
            "need 1 <= l1 < l2 <= {}, got l1={l1}, l2={l2}",
            state.modes()
        )));
    }
    let (d1, d2) = (interval_log_det(state, l1)?, interval_log_det(state, l2)?);
    Ok(2.0 / (l2 as f64 / l1 as f64).ln() * (d2 - d1 + 2.0 * (l2 - l1) as f64 * LN_2))
}
