use nalgebra::{DMatrix, DVector};
use std::f64::consts::SQRT_2;

use crate::{Result, WaveletError, WaveletFamily};

/// Which of the two basis functions to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionKind {
    Scale,
    Wavelet,
}

/// Samples of s(x) or w(x) at x = k·2^{-J} over the support [0, 2K-1].
#[derive(Debug, Clone, PartialEq)]
pub struct DyadicFunction {
    level: u32,
    support_end: usize,
    samples: Vec<f64>,
}

impl DyadicFunction {
    /// Resolution level J.
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Closed support interval.
    pub fn support(&self) -> (f64, f64) {
        (0.0, self.support_end as f64)
    }

    /// Grid spacing 2^{-J}.
    pub fn spacing(&self) -> f64 {
        (-(self.level as f64)).exp2()
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Grid abscissa of sample `i`.
    pub fn abscissa(&self, i: usize) -> f64 {
        i as f64 * self.spacing()
    }

    /// Riemann sum of `weight(x)·f(x)·2^{-J}` over the grid.
    pub fn integrate<F: Fn(f64) -> f64>(&self, weight: F) -> f64 {
        let dx = self.spacing();
        self.samples
            .iter()
            .enumerate()
            .map(|(i, &v)| weight(i as f64 * dx) * v)
            .sum::<f64>()
            * dx
    }

    /// Riemann-sum moment ∫ x^p f(x) dx.
    pub fn moment(&self, p: i32) -> f64 {
        self.integrate(|x| if p == 0 { 1.0 } else { x.powi(p) })
    }

    /// Piecewise-linear interpolation; zero outside the support.
    pub fn eval(&self, x: f64) -> f64 {
        let end = self.support_end as f64;
        if !(0.0..=end).contains(&x) {
            return 0.0;
        }
        let t = x / self.spacing();
        let i = t.floor() as usize;
        if i + 1 >= self.samples.len() {
            return *self.samples.last().unwrap_or(&0.0);
        }
        let frac = t - i as f64;
        self.samples[i] * (1.0 - frac) + self.samples[i + 1] * frac
    }

    /// Sup-norm distance to the linear upsampling of `coarser` onto this grid.
    pub fn refinement_gap(&self, coarser: &DyadicFunction) -> f64 {
        assert!(coarser.level < self.level && coarser.support_end == self.support_end);
        self.samples
            .iter()
            .enumerate()
            .map(|(i, &v)| (v - coarser.eval(self.abscissa(i))).abs())
            .fold(0.0, f64::max)
    }
}

/// Scale function at the integers 0..=2K-1: the eigenvalue-1 eigenvector of
/// A_{k,j} = √2 h_{2k-j}, normalised to unit sum.
fn integer_values(family: &WaveletFamily) -> Result<Vec<f64>> {
    let h = family.h();
    let n = family.len();
    let mut a = DMatrix::<f64>::zeros(n + 1, n);
    for k in 0..n {
        for j in 0..n {
            let t = 2 * k as isize - j as isize;
            if t >= 0 && (t as usize) < n {
                a[(k, j)] = SQRT_2 * h[t as usize];
            }
        }
        a[(k, k)] -= 1.0;
    }
    for j in 0..n {
        a[(n, j)] = 1.0;
    }
    let mut b = DVector::<f64>::zeros(n + 1);
    b[n] = 1.0;
    let svd = a.clone().svd(true, true);
    let s = svd
        .solve(&b, 1e-12)
        .map_err(|_| WaveletError::ConvergenceFailure { residual: f64::NAN })?;
    let residual = (&a * &s - &b).amax();
    if residual > 1e-10 {
        return Err(WaveletError::ConvergenceFailure { residual });
    }
    Ok(s.iter().copied().collect())
}

/// Scale function samples at level `level` from the integer values.
fn refine_scale(family: &WaveletFamily, level: u32) -> Result<Vec<f64>> {
    let h = family.h();
    let end = family.support_end();
    let mut cur = integer_values(family)?;
    for lev in 1..=level {
        let half = 1usize << (lev - 1);
        let count = end * (1usize << lev) + 1;
        let mut next = vec![0.0; count];
        for (i, out) in next.iter_mut().enumerate() {
            if i % 2 == 0 {
                *out = cur[i / 2];
                continue;
            }
            let mut acc = 0.0;
            for (t, &ht) in h.iter().enumerate() {
                let off = t * half;
                if off <= i && i - off < cur.len() {
                    acc += ht * cur[i - off];
                }
            }
            *out = SQRT_2 * acc;
        }
        cur = next;
    }
    Ok(cur)
}

/// Evaluates s(x) or w(x) on the dyadic grid of level `level` by the
/// two-scale recursion started from the integer-grid fixed point.
pub fn cascade_eval(family: &WaveletFamily, kind: FunctionKind, level: u32) -> Result<DyadicFunction> {
    if level < 1 {
        return Err(WaveletError::InvalidArgument("resolution level must be >= 1".into()));
    }
    let end = family.support_end();
    let samples = match kind {
        FunctionKind::Scale => refine_scale(family, level)?,
        FunctionKind::Wavelet => {
            let s = refine_scale(family, level - 1)?;
            let g = family.g();
            let stride = 1usize << (level - 1);
            let count = end * (1usize << level) + 1;
            (0..count)
                .map(|i| {
                    let mut acc = 0.0;
                    for (t, &gt) in g.iter().enumerate() {
                        let off = t * stride;
                        if off <= i && i - off < s.len() {
                            acc += gt * s[i - off];
                        }
                    }
                    SQRT_2 * acc
                })
                .collect()
        }
    };
    Ok(DyadicFunction { level, support_end: end, samples })
}
