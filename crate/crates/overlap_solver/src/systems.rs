use nalgebra::{DMatrix, DVector};
use wavelet_kernels::WaveletFamily;

use crate::{OverlapError, Result};

const RANK_TOL: f64 = 1e-10;

/// Γ_{0,n} for n in [−R, R], R = 2K−2.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaCoeffs {
    reach: usize,
    values: Vec<f64>,
}

impl GammaCoeffs {
    /// Offset range bound R.
    pub fn reach(&self) -> usize {
        self.reach
    }

    /// Γ_{0,n}; zero outside [−R, R].
    pub fn get(&self, n: isize) -> f64 {
        let r = self.reach as isize;
        if n.abs() > r {
            0.0
        } else {
            self.values[(n + r) as usize]
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// D_{0,r,s} for r, s in [−R, R].
#[derive(Debug, Clone, PartialEq)]
pub struct TripleOverlaps {
    reach: usize,
    values: DMatrix<f64>,
}

impl TripleOverlaps {
    pub fn reach(&self) -> usize {
        self.reach
    }

    /// D_{0,r,s}; zero outside the index box.
    pub fn get(&self, r: isize, s: isize) -> f64 {
        let b = self.reach as isize;
        if r.abs() > b || s.abs() > b {
            0.0
        } else {
            self.values[((r + b) as usize, (s + b) as usize)]
        }
    }
}

fn tap(h: &[f64], i: isize) -> f64 {
    if i >= 0 && (i as usize) < h.len() {
        h[i as usize]
    } else {
        0.0
    }
}

fn least_squares(a: DMatrix<f64>, b: DVector<f64>, residual_tol: f64) -> Result<DVector<f64>> {
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let ratio = smin / smax;
    if ratio < RANK_TOL {
        return Err(OverlapError::RankDeficiency { ratio });
    }
    let x = svd.solve(&b, 0.0).map_err(|_| OverlapError::RankDeficiency { ratio })?;
    let residual = (&a * &x - &b).amax();
    if residual > residual_tol {
        return Err(OverlapError::Residual { residual });
    }
    Ok(x)
}

/// Solves the refinement eigen-system for Γ_{0,n} with Σ n Γ_{0,n} = 1.
pub fn solve_gamma(family: &WaveletFamily) -> Result<GammaCoeffs> {
    let h = family.h();
    let reach = family.overlap_reach();
    let r = reach as isize;
    let n = 2 * reach + 1;
    let mut a = DMatrix::<f64>::zeros(n + 1, n);
    for (row, j) in (-r..=r).enumerate() {
        for (col, k) in (-r..=r).enumerate() {
            let s: f64 = (0..h.len() as isize).map(|m| tap(h, m) * tap(h, k + m - 2 * j)).sum();
            a[(row, col)] = 2.0 * s;
        }
        a[(row, row)] -= 1.0;
    }
    for (col, k) in (-r..=r).enumerate() {
        a[(n, col)] = k as f64;
    }
    let mut b = DVector::zeros(n + 1);
    b[n] = 1.0;
    let x = least_squares(a, b, 1e-10)?;
    Ok(GammaCoeffs { reach, values: x.iter().copied().collect() })
}

/// Solves the triple-overlap system: refinement rows with factor 4√2,
/// Σ_k D_{0,j,k} = 0 and Σ_j j D_{0,j,k} = Γ_{0,k}.
pub fn solve_triple(family: &WaveletFamily, gamma: &GammaCoeffs) -> Result<TripleOverlaps> {
    let h = family.h();
    let reach = family.overlap_reach();
    let r = reach as isize;
    let n = 2 * reach + 1;
    let nn = n * n;
    let idx = |a: isize, b: isize| ((a + r) as usize) * n + (b + r) as usize;
    let coef = 4.0 * std::f64::consts::SQRT_2;
    let mut a = DMatrix::<f64>::zeros(nn + 2 * n, nn);
    for p in -r..=r {
        for q in -r..=r {
            let row = idx(p, q);
            for k in -r..=r {
                for j in -r..=r {
                    let s: f64 = (0..h.len() as isize)
                        .map(|m| tap(h, m) * tap(h, k + m - 2 * p) * tap(h, j + m - 2 * q))
                        .sum();
                    if s != 0.0 {
                        a[(row, idx(k, j))] = coef * s;
                    }
                }
            }
            a[(row, row)] -= 1.0;
        }
    }
    let mut b = DVector::zeros(nn + 2 * n);
    for j in -r..=r {
        let row = nn + (j + r) as usize;
        for k in -r..=r {
            a[(row, idx(j, k))] = 1.0;
        }
    }
    for k in -r..=r {
        let row = nn + n + (k + r) as usize;
        for j in -r..=r {
            a[(row, idx(j, k))] = j as f64;
        }
        b[row] = gamma.get(k);
    }
    let x = least_squares(a, b, 1e-9)?;
    Ok(TripleOverlaps { reach, values: DMatrix::from_row_slice(n, n, x.as_slice()) })
}

/// D^{[ss]0}_{0,m} = ∫ ∂s(x) ∂s(x−m) dx for m = 0..=2K−2.
pub fn dss_row(family: &WaveletFamily) -> Result<Vec<f64>> {
    let gamma = solve_gamma(family)?;
    let triple = solve_triple(family, &gamma)?;
    let r = family.overlap_reach() as isize;
    Ok((0..=r).map(|m| (-r..=r).map(|k| triple.get(-k, m - k)).sum()).collect())
}
