use nalgebra::{DMatrix, DVector};
use overlap_solver::{circulant_overlap, dss_row, OverlapTables};
use std::f64::consts::PI;

use crate::{Basis, LatticeError, LatticeSpec, Result};

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Circulant(Vec<f64>),
    Dense(DMatrix<f64>),
}

/// Symmetric V×V coupling matrix K of the Hamiltonian ½Σ(Π² + Φ K Φ).
///
/// Boundary matrices are stored by their first circulant row, bulk matrices
/// densely.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrix {
    spec: LatticeSpec,
    basis: Basis,
    repr: Repr,
}

impl CouplingMatrix {
    /// Wraps an explicit dense matrix.
    pub fn from_dense(spec: LatticeSpec, basis: Basis, entries: DMatrix<f64>) -> Result<Self> {
        let v = spec.modes();
        if entries.shape() != (v, v) {
            return Err(LatticeError::DimensionMismatch(format!(
                "expected {v}x{v}, got {:?}",
                entries.shape()
            )));
        }
        Ok(Self { spec, basis, repr: Repr::Dense(entries) })
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// First row of a circulant boundary matrix.
    pub fn circulant_row(&self) -> Option<&[f64]> {
        match &self.repr {
            Repr::Circulant(row) => Some(row),
            Repr::Dense(_) => None,
        }
    }

    /// Normalised null vector of a massless matrix: uniform on the boundary,
    /// uniform over the coarsest scale block in the bulk. `None` when m0 > 0.
    pub fn null_vector(&self) -> Option<DVector<f64>> {
        if self.spec.mass() > 0.0 {
            return None;
        }
        let v = self.spec.modes();
        let support = match self.basis {
            Basis::Boundary => v,
            Basis::Bulk => self.spec.ring(),
        };
        let mut u = DVector::zeros(v);
        u.rows_mut(0, support).fill(1.0 / (support as f64).sqrt());
        Some(u)
    }

    /// Dense V×V entries.
    pub fn to_dense(&self) -> DMatrix<f64> {
        match &self.repr {
            Repr::Dense(m) => m.clone(),
            Repr::Circulant(row) => {
                let v = row.len();
                DMatrix::from_fn(v, v, |a, b| row[(b + v - a) % v])
            }
        }
    }
}

/// Circulant boundary matrix (m0² + D00) on the diagonal and D_m at offsets ±m.
pub fn boundary_coupling(spec: &LatticeSpec) -> Result<CouplingMatrix> {
    let dss = dss_row(spec.family())?;
    let v = spec.modes();
    let mut row = vec![0.0; v];
    row[0] = spec.mass().powi(2);
    for (m, &d) in dss.iter().enumerate() {
        row[m % v] += d;
        if m > 0 {
            row[(v - m) % v] += d;
        }
    }
    Ok(CouplingMatrix { spec: spec.clone(), basis: Basis::Boundary, repr: Repr::Circulant(row) })
}

/// Normal-mode frequencies d_j = [m0² + D00 + 2Σ_{m≥1} D_m cos(2πjm/V)]^{1/2}.
pub fn boundary_spectrum(spec: &LatticeSpec) -> Result<Vec<f64>> {
    let dss = dss_row(spec.family())?;
    let v = spec.modes();
    let m2 = spec.mass().powi(2);
    (0..v)
        .map(|j| {
            let k = 2.0 * PI * j as f64 / v as f64;
            let d2 = m2
                + dss[0]
                + 2.0 * dss.iter().enumerate().skip(1).map(|(m, &d)| d * (k * m as f64).cos()).sum::<f64>();
            if d2 < -1e-9 {
                Err(LatticeError::NegativeEigenvalue { mode: j, value: d2 })
            } else {
                Ok(d2.max(0.0).sqrt())
            }
        })
        .collect()
}

/// Bulk coupling matrix assembled from derivative overlaps, with the
/// 2^{-2n} rescaling of every block and the mass on the diagonal.
pub fn bulk_coupling(spec: &LatticeSpec, tables: &OverlapTables) -> Result<CouplingMatrix> {
    let (l, n) = (spec.ring(), spec.scales());
    if tables.k() != spec.family().k() || tables.ring() != l || tables.scales() != n {
        return Err(LatticeError::DimensionMismatch(format!(
            "tables for (K={}, L={}, n={}) used with (K={}, L={l}, n={n})",
            tables.k(),
            tables.ring(),
            tables.scales(),
            spec.family().k()
        )));
    }
    let v = spec.modes();
    let unit = 4f64.powi(-(n as i32));
    let mut k = DMatrix::zeros(v, v);
    k.view_mut((0, 0), (l, l)).copy_from(&(circulant_overlap(tables.dss_row(), l) * unit));
    for lev in 0..n {
        let off = spec.block_offset(lev);
        let len = spec.block_len(lev);
        let sw = tables.dsw(lev) * (0.5 * unit);
        k.view_mut((off, 0), (len, l)).copy_from(&sw);
        k.view_mut((0, off), (l, len)).copy_from(&sw.transpose());
        for j in 0..=lev {
            let ww = tables.dww(lev, j) * unit;
            let (oj, lj) = (spec.block_offset(j), spec.block_len(j));
            k.view_mut((off, oj), (len, lj)).copy_from(&ww);
            if j < lev {
                k.view_mut((oj, off), (lj, len)).copy_from(&ww.transpose());
            }
        }
    }
    for i in 0..v {
        k[(i, i)] += spec.mass().powi(2);
    }
    CouplingMatrix::from_dense(spec.clone(), Basis::Bulk, k)
}
