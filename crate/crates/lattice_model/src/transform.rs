use nalgebra::DMatrix;
use std::f64::consts::PI;
use wavelet_kernels::{cascade_eval, DyadicFunction, FunctionKind, DEFAULT_QUADRATURE_LEVEL};

use crate::{Basis, LatticeError, LatticeSpec, ModeIndex, Result};

/// Real orthogonal Fourier matrix whose rows are the boundary normal modes:
/// constant, cosines, the alternating row, then sines.
pub fn boundary_fourier_matrix(v: usize) -> Result<DMatrix<f64>> {
    if v == 0 || v % 2 == 1 {
        return Err(LatticeError::OddSize(v));
    }
    let half = v / 2;
    let vf = v as f64;
    let (a, b) = ((1.0 / vf).sqrt(), (2.0 / vf).sqrt());
    Ok(DMatrix::from_fn(v, v, |j, k| {
        let phase = 2.0 * PI * ((j * k) % v) as f64 / vf;
        match j {
            0 => a,
            j if j < half => b * phase.cos(),
            j if j == half => if k % 2 == 0 { a } else { -a },
            _ => b * phase.sin(),
        }
    }))
}

/// A row of overlap coefficients on the boundary ring, stored from `start`.
///
/// Entry i sits at boundary site (start + i) mod V; entries that wrap onto
/// the same site add.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapRow {
    pub start: usize,
    pub values: Vec<f64>,
}

impl OverlapRow {
    /// Folds the row onto a dense ring of size `v`.
    pub fn to_dense(&self, v: usize) -> Vec<f64> {
        let mut out = vec![0.0; v];
        for (i, &x) in self.values.iter().enumerate() {
            out[(self.start + i) % v] += x;
        }
        out
    }

    /// Iterates (site, value) pairs with sites reduced mod `v`.
    pub fn entries(&self, v: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values.iter().enumerate().map(move |(i, &x)| ((self.start + i) % v, x))
    }
}

/// Upsamples a coefficient vector `levels` times with filter `f`: y_{2a+t} += f_t x_a.
fn upsample(mut x: Vec<f64>, f: &[f64], levels: usize) -> Vec<f64> {
    for _ in 0..levels {
        let mut y = vec![0.0; 2 * x.len() + f.len() - 2];
        for (a, &xa) in x.iter().enumerate() {
            if xa != 0.0 {
                for (t, &ft) in f.iter().enumerate() {
                    y[2 * a + t] += ft * xa;
                }
            }
        }
        x = y;
    }
    x
}

/// Boundary overlaps c_{n,j,m} of coarsest scale function j (a row of M_bk).
pub fn scale_row(spec: &LatticeSpec, j: usize) -> Result<OverlapRow> {
    ModeIndex::Scale(j).flat(spec)?;
    let values = upsample(vec![1.0], spec.family().h(), spec.scales());
    Ok(OverlapRow { start: j << spec.scales(), values })
}

/// Exact boundary overlaps f_{n,r,j,m} (= d_{n,r,j,m}) of wavelet (r, j).
pub fn wavelet_row(spec: &LatticeSpec, r: usize, j: usize) -> Result<OverlapRow> {
    ModeIndex::Wavelet { r, m: j }.flat(spec)?;
    let first = spec.family().g().to_vec();
    let values = upsample(first, spec.family().h(), spec.scales() - r - 1);
    Ok(OverlapRow { start: j << (spec.scales() - r), values })
}

/// Sampled approximation f ≈ 2^{(r−n)/2} w((m − j2^{n−r} + 1)·2^{r−n}) for
/// m in 2^{n−r}[j, j+2K−1]; accurate when n ≫ r.
pub fn sampled_wavelet_row(spec: &LatticeSpec, w: &DyadicFunction, r: usize, j: usize) -> Result<OverlapRow> {
    ModeIndex::Wavelet { r, m: j }.flat(spec)?;
    let shift = spec.scales() - r;
    let width = spec.family().support_end() << shift;
    let scale = (-(shift as f64)).exp2();
    let amp = scale.sqrt();
    let values = (0..=width).map(|i| amp * w.eval((i as f64 + 1.0) * scale)).collect();
    Ok(OverlapRow { start: j << shift, values })
}

/// Orthogonal wavelet transform M_bk: row i is the boundary expansion of bulk mode i.
///
/// Each analysis stage maps a ring of length ℓ to ℓ/2 coarse outputs
/// Σ_t h_t x_{(2m+t) mod ℓ} and ℓ/2 wavelet outputs with g_t.
pub fn wavelet_transform_matrix(spec: &LatticeSpec) -> Result<DMatrix<f64>> {
    let v = spec.modes();
    let mut m = DMatrix::zeros(v, v);
    for i in 0..v {
        let row = match ModeIndex::from_flat(spec, Basis::Bulk, i)? {
            ModeIndex::Scale(j) => scale_row(spec, j)?,
            ModeIndex::Wavelet { r, m } => wavelet_row(spec, r, m)?,
            ModeIndex::Boundary(_) => unreachable!(),
        };
        for (site, x) in row.entries(v) {
            m[(i, site)] += x;
        }
    }
    Ok(m)
}

/// How wavelet overlap rows are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverlapMode {
    Exact,
    Sampled,
}

/// All boundary overlap rows: c for the scale block, f (= d) per wavelet scale.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossBasisOverlaps {
    pub c: Vec<OverlapRow>,
    pub f: Vec<Vec<OverlapRow>>,
}

/// Computes c_{n,j,m} and f_{n,r,j,m} for every bulk mode.
pub fn cross_basis_overlaps(spec: &LatticeSpec, mode: OverlapMode) -> Result<CrossBasisOverlaps> {
    let c = (0..spec.ring()).map(|j| scale_row(spec, j)).collect::<Result<_>>()?;
    let w = match mode {
        OverlapMode::Exact => None,
        OverlapMode::Sampled => {
            Some(cascade_eval(spec.family(), FunctionKind::Wavelet, DEFAULT_QUADRATURE_LEVEL)?)
        }
    };
    let f = (0..spec.scales())
        .map(|r| {
            (0..spec.block_len(r))
                .map(|j| match &w {
                    None => wavelet_row(spec, r, j),
                    Some(w) => sampled_wavelet_row(spec, w, r, j),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(CrossBasisOverlaps { c, f })
}
