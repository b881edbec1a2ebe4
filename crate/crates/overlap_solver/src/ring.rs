use nalgebra::DMatrix;
use rayon::prelude::*;
use wavelet_kernels::WaveletFamily;

use crate::{dss_row, OverlapError, Result};

/// Circulant ring matrix with entry D_{|m|} at offsets ±m.
pub fn circulant_overlap(row: &[f64], size: usize) -> DMatrix<f64> {
    let reach = row.len() as isize - 1;
    let mut c = DMatrix::zeros(size, size);
    for p in 0..size {
        for m in -reach..=reach {
            let q = (p as isize + m).rem_euclid(size as isize) as usize;
            c[(p, q)] += row[m.unsigned_abs()];
        }
    }
    c
}

/// Stage matrix mapping ring `coarse` to ring `2·coarse`: row a holds f_t at (2a+t) mod 2·coarse.
fn stage(filter: &[f64], coarse: usize) -> DMatrix<f64> {
    let fine = 2 * coarse;
    let mut a = DMatrix::zeros(coarse, fine);
    for row in 0..coarse {
        for (t, &ft) in filter.iter().enumerate() {
            a[(row, (2 * row + t) % fine)] += ft;
        }
    }
    a
}

/// Product of scale stages taking scale `from` to scale `to` on a ring of base size `l`.
fn scale_chain(h: &[f64], l: usize, from: usize, to: usize) -> DMatrix<f64> {
    let mut p = DMatrix::identity(l << from, l << from);
    for lev in from..to {
        p = p * stage(h, l << lev);
    }
    p
}

fn check(family: &WaveletFamily, l: usize, n: usize, lev: usize, j: usize) -> Result<()> {
    if l < family.min_ring() {
        return Err(OverlapError::SizeTooSmall { l, min: family.min_ring() });
    }
    if lev >= n || j > lev {
        return Err(OverlapError::ScaleOutOfRange { l: lev, j, n });
    }
    Ok(())
}

fn sw_block(family: &WaveletFamily, row: &[f64], l: usize, lev: usize) -> DMatrix<f64> {
    let fine = lev + 1;
    let g = stage(family.g(), l << lev);
    let d = circulant_overlap(row, l << fine);
    let p = scale_chain(family.h(), l, 0, fine);
    (g * d * p.transpose()) * (2.0 * 4f64.powi(fine as i32))
}

fn ww_block(family: &WaveletFamily, row: &[f64], l: usize, lev: usize, j: usize) -> DMatrix<f64> {
    let fine = lev + 1;
    let gl = stage(family.g(), l << lev);
    let d = circulant_overlap(row, l << fine);
    let gj = stage(family.g(), l << j) * scale_chain(family.h(), l, j + 1, fine);
    (gl * d * gj.transpose()) * 4f64.powi(fine as i32)
}

/// Scale-wavelet couplings D^{[sw]l,0}: rows are the L·2^l wavelets at scale
/// `lev`, columns the L coarsest scale functions, so every row sums to zero.
///
/// The factor 2 of the defining integral 2∫∂w∂s is included.
pub fn dsw_matrix(family: &WaveletFamily, l: usize, n: usize, lev: usize) -> Result<DMatrix<f64>> {
    check(family, l, n, lev, 0)?;
    Ok(sw_block(family, &dss_row(family)?, l, lev))
}

/// Wavelet-wavelet couplings D^{[ww]l,j} = ∫∂w^l_a ∂w^j_b, of size L·2^l × L·2^j.
pub fn dww_matrix(
    family: &WaveletFamily,
    l: usize,
    n: usize,
    lev: usize,
    j: usize,
) -> Result<DMatrix<f64>> {
    check(family, l, n, lev, j)?;
    Ok(ww_block(family, &dss_row(family)?, l, lev, j))
}

/// All derivative couplings needed for a ring of L coarse sites and n scales.
///
/// Values are in units of the coarsest scale; the bulk coupling matrix at
/// cutoff n applies the 2^{-2n} rescaling.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapTables {
    k: usize,
    l: usize,
    n: usize,
    dss: Vec<f64>,
    dsw: Vec<DMatrix<f64>>,
    dww: Vec<Vec<DMatrix<f64>>>,
}

impl OverlapTables {
    /// Computes every block; independent blocks run in parallel.
    pub fn compute(family: &WaveletFamily, l: usize, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(OverlapError::ScaleOutOfRange { l: 0, j: 0, n });
        }
        check(family, l, n, 0, 0)?;
        let dss = dss_row(family)?;
        let dsw = (0..n).into_par_iter().map(|lev| sw_block(family, &dss, l, lev)).collect();
        let dww = (0..n)
            .into_par_iter()
            .map(|lev| (0..=lev).map(|j| ww_block(family, &dss, l, lev, j)).collect())
            .collect();
        Ok(Self { k: family.k(), l, n, dss, dsw, dww })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ring(&self) -> usize {
        self.l
    }

    pub fn scales(&self) -> usize {
        self.n
    }

    /// D^{[ss]0}_{0,m}, m = 0..=2K−2.
    pub fn dss_row(&self) -> &[f64] {
        &self.dss
    }

    /// D^{[sw]l,0}, wavelet rows.
    pub fn dsw(&self, lev: usize) -> &DMatrix<f64> {
        &self.dsw[lev]
    }

    /// D^{[ww]l,j} for j ≤ l.
    pub fn dww(&self, lev: usize, j: usize) -> &DMatrix<f64> {
        &self.dww[lev][j]
    }
}
