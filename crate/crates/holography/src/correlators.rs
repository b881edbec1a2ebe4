use gaussian_engine::{entropy_bits, two_mode_mutual_information, CovarianceState};
use lattice_model::{
    sampled_wavelet_row, wavelet_row, wavelet_transform_matrix, Basis, ModeIndex, OverlapMode, OverlapRow,
};
use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use wavelet_kernels::{cascade_eval, DyadicFunction, FunctionKind, DEFAULT_QUADRATURE_LEVEL};

use crate::{BulkPoint, HolographyError, Result};

/// Field component of a two-point function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Field {
    Phi,
    Pi,
}

/// Bulk wavelet correlators computed from a boundary state.
///
/// C^{AA}(p, q) = Σ_{m,m′} f_p[m] f_q[m′] ⟨A_m A_m′⟩ with f the boundary
/// overlap rows of the two wavelet modes, exact or sampled from w.
/// Wavelet rows annihilate the k = 0 mode, so for massless lattices a
/// [`ZeroModePolicy::Deflated`](gaussian_engine::ZeroModePolicy) state gives the
/// same correlators as a regularized one without its large zero-mode term.
pub struct BulkCorrelator<'a> {
    state: &'a CovarianceState,
    wavelet: Option<DyadicFunction>,
}

impl<'a> BulkCorrelator<'a> {
    pub fn new(state: &'a CovarianceState, mode: OverlapMode) -> Result<Self> {
        Self::with_level(state, mode, DEFAULT_QUADRATURE_LEVEL)
    }

    /// As [`BulkCorrelator::new`], sampling w on a dyadic grid of the given level.
    pub fn with_level(state: &'a CovarianceState, mode: OverlapMode, level: u32) -> Result<Self> {
        if state.basis() != Basis::Boundary {
            return Err(HolographyError::InvalidArgument("bulk correlators are built from a boundary state".into()));
        }
        let wavelet = match mode {
            OverlapMode::Exact => None,
            OverlapMode::Sampled => {
                Some(cascade_eval(state.spec().family(), FunctionKind::Wavelet, level)?)
            }
        };
        Ok(Self { state, wavelet })
    }

    pub fn state(&self) -> &CovarianceState {
        self.state
    }

    /// Boundary overlap row of the wavelet mode at p.
    pub fn row(&self, p: &BulkPoint) -> Result<OverlapRow> {
        let spec = self.state.spec();
        if p.r >= spec.scales() {
            return Err(HolographyError::ScaleOutOfRange { r: p.r, n: spec.scales() });
        }
        Ok(match &self.wavelet {
            None => wavelet_row(spec, p.r, p.m)?,
            Some(w) => sampled_wavelet_row(spec, w, p.r, p.m)?,
        })
    }

    fn entry(&self, field: Field, a: usize, b: usize) -> f64 {
        match field {
            Field::Phi => self.state.phi_entry(a, b),
            Field::Pi => self.state.pi_entry(a, b),
        }
    }

    /// Equal-time correlator ⟨A_p A_q⟩.
    pub fn correlator(&self, field: Field, p: &BulkPoint, q: &BulkPoint) -> Result<f64> {
        let (fp, fq) = (self.row(p)?, self.row(q)?);
        let v = self.state.modes();
        if self.state.circulant_rows().is_some() {
            // Σ_lag X(lag)·c(sq − sp + lag) with X the cross-correlation of the rows.
            let (lp, lq) = (fp.values.len() as i64, fq.values.len() as i64);
            let base = fq.start as i64 - fp.start as i64;
            let mut sum = 0.0;
            for lag in -(lp - 1)..lq {
                let x: f64 = ((-lag).max(0)..lp.min(lq - lag))
                    .map(|a| fp.values[a as usize] * fq.values[(a + lag) as usize])
                    .sum();
                sum += x * self.entry(field, 0, (base + lag).rem_euclid(v as i64) as usize);
            }
            Ok(sum)
        } else {
            let mut sum = 0.0;
            for (a, x) in fp.entries(v) {
                for (b, y) in fq.entries(v) {
                    sum += x * y * self.entry(field, a, b);
                }
            }
            Ok(sum)
        }
    }

    /// Same-scale correlators C^{AA}((r,0),(r,j)) for each j, from the
    /// autocorrelation of the row at (r,0).
    pub fn same_scale(&self, field: Field, r: usize, js: &[usize]) -> Result<Vec<f64>> {
        let f = self.row(&BulkPoint::new(r, 0))?;
        let spec = self.state.spec();
        let v = spec.modes() as i64;
        let stride = 1i64 << (spec.scales() - r);
        let len = f.values.len();
        let auto: Vec<f64> = (0..len)
            .map(|lag| f.values.iter().zip(&f.values[lag..]).map(|(a, b)| a * b).sum())
            .collect();
        let block = spec.block_len(r);
        if let Some(&bad) = js.iter().find(|&&j| j >= block) {
            return Err(HolographyError::InvalidArgument(format!("separation {bad} outside scale {r}")));
        }
        Ok(js
            .par_iter()
            .map(|&j| {
                let shift = j as i64 * stride;
                let c = |d: i64| self.entry(field, 0, d.rem_euclid(v) as usize);
                let mut sum = auto[0] * c(shift);
                for (lag, &x) in auto.iter().enumerate().skip(1) {
                    sum += x * (c(shift + lag as i64) + c(shift - lag as i64));
                }
                sum
            })
            .collect())
    }

    /// 4×4 reduced covariance of the wavelet modes p and q, ordered (Φ_p, Φ_q, Π_p, Π_q).
    pub fn pair_covariance(&self, p: &BulkPoint, q: &BulkPoint) -> Result<DMatrix<f64>> {
        let mut g = DMatrix::zeros(4, 4);
        for (i, a) in [p, q].into_iter().enumerate() {
            for (j, b) in [p, q].into_iter().enumerate() {
                if j < i {
                    continue;
                }
                let (x, y) = (self.correlator(Field::Phi, a, b)?, self.correlator(Field::Pi, a, b)?);
                g[(i, j)] = x;
                g[(j, i)] = x;
                g[(2 + i, 2 + j)] = y;
                g[(2 + j, 2 + i)] = y;
            }
        }
        Ok(g)
    }

    /// Entropy in bits of the single bulk mode at p.
    pub fn entropy(&self, p: &BulkPoint) -> Result<f64> {
        let (x, y) = (self.correlator(Field::Phi, p, p)?, self.correlator(Field::Pi, p, p)?);
        Ok(entropy_bits(&DMatrix::from_row_slice(2, 2, &[x, 0.0, 0.0, y]))?)
    }

    /// Mutual information in bits between the bulk modes at p and q.
    pub fn mutual_information(&self, p: &BulkPoint, q: &BulkPoint) -> Result<f64> {
        let g = self.pair_covariance(p, q)?;
        Ok(two_mode_mutual_information(g[(0, 0)], g[(1, 1)], g[(0, 1)], g[(2, 2)], g[(3, 3)], g[(2, 3)])?)
    }

    /// Same-scale mutual information I((r,0),(r,j)) for each j.
    pub fn same_scale_mutual_information(&self, r: usize, js: &[usize]) -> Result<Vec<f64>> {
        let mut all = vec![0];
        all.extend_from_slice(js);
        let phi = self.same_scale(Field::Phi, r, &all)?;
        let pi = self.same_scale(Field::Pi, r, &all)?;
        (1..all.len())
            .map(|i| Ok(two_mode_mutual_information(phi[0], phi[0], phi[i], pi[0], pi[0], pi[i])?))
            .collect()
    }
}

/// One-off bulk correlator ⟨A_p A_q⟩ from a boundary state.
pub fn bulk_correlator(
    state: &CovarianceState,
    field: Field,
    p: &BulkPoint,
    q: &BulkPoint,
    mode: OverlapMode,
) -> Result<f64> {
    BulkCorrelator::new(state, mode)?.correlator(field, p, q)
}

/// Boundary two-point function ⟨A_m A_m′⟩ reassembled from a bulk state
/// through the scale (c) and wavelet (d) overlap coefficients.
pub fn boundary_corr_from_bulk(state: &CovarianceState, field: Field, m: usize, mp: usize) -> Result<f64> {
    if state.basis() != Basis::Bulk {
        return Err(HolographyError::InvalidArgument("expected a bulk state".into()));
    }
    let spec = state.spec();
    let v = spec.modes();
    for site in [m, mp] {
        ModeIndex::Boundary(site).flat(spec)?;
    }
    let w = wavelet_transform_matrix(spec)?;
    let (cm, cmp) = (w.column(m), w.column(mp));
    let mut sum = 0.0;
    for i in 0..v {
        if cm[i] == 0.0 {
            continue;
        }
        for j in 0..v {
            if cmp[j] == 0.0 {
                continue;
            }
            let c = match field {
                Field::Phi => state.phi_entry(i, j),
                Field::Pi => state.pi_entry(i, j),
            };
            sum += cm[i] * cmp[j] * c;
        }
    }
    Ok(sum)
}
