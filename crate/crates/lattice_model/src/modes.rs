use wavelet_kernels::WaveletFamily;

use crate::{LatticeError, Result};

/// Problem instance: family, L coarse sites, cutoff scale n and bare mass m0.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpec {
    family: WaveletFamily,
    l: usize,
    n: usize,
    m0: f64,
}

impl LatticeSpec {
    /// Validates L ≥ 2(2K−1), n ≥ 1 and m0 ≥ 0.
    pub fn new(family: WaveletFamily, l: usize, n: usize, m0: f64) -> Result<Self> {
        let min = family.min_ring();
        if l < min {
            return Err(LatticeError::SizeTooSmall { l, min });
        }
        if n == 0 || n > 24 {
            return Err(LatticeError::InvalidSpec(format!("cutoff scale n={n} must be in 1..=24")));
        }
        if !(m0 >= 0.0) || !m0.is_finite() {
            return Err(LatticeError::InvalidSpec(format!("mass m0={m0} must be finite and >= 0")));
        }
        Ok(Self { family, l, n, m0 })
    }

    pub fn family(&self) -> &WaveletFamily {
        &self.family
    }

    /// Number of coarsest-scale sites L.
    pub fn ring(&self) -> usize {
        self.l
    }

    /// Cutoff scale n.
    pub fn scales(&self) -> usize {
        self.n
    }

    pub fn mass(&self) -> f64 {
        self.m0
    }

    /// Mode count V = L·2^n.
    pub fn modes(&self) -> usize {
        self.l << self.n
    }

    /// Copy of this spec with a different bare mass.
    pub fn with_mass(&self, m0: f64) -> Result<Self> {
        Self::new(self.family.clone(), self.l, self.n, m0)
    }

    /// Number of sites L·2^r in wavelet block r.
    pub fn block_len(&self, r: usize) -> usize {
        self.l << r
    }

    /// Flat bulk offset of wavelet block r (the scale block starts at 0).
    pub fn block_offset(&self, r: usize) -> usize {
        self.l << r
    }
}

/// Which field basis a matrix or state is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    Boundary,
    Bulk,
}

/// A single lattice degree of freedom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeIndex {
    /// Boundary site m in [0, V).
    Boundary(usize),
    /// Coarsest scale-function site m in [0, L).
    Scale(usize),
    /// Wavelet at scale r in [0, n), position m in [0, L·2^r).
    Wavelet { r: usize, m: usize },
}

impl ModeIndex {
    pub fn basis(&self) -> Basis {
        match self {
            ModeIndex::Boundary(_) => Basis::Boundary,
            _ => Basis::Bulk,
        }
    }

    /// Flat index within its basis.
    pub fn flat(&self, spec: &LatticeSpec) -> Result<usize> {
        let oob = || LatticeError::IndexOutOfRange(format!("{self:?}"));
        match *self {
            ModeIndex::Boundary(m) if m < spec.modes() => Ok(m),
            ModeIndex::Scale(m) if m < spec.ring() => Ok(m),
            ModeIndex::Wavelet { r, m } if r < spec.scales() && m < spec.block_len(r) => {
                Ok(spec.block_offset(r) + m)
            }
            _ => Err(oob()),
        }
    }

    /// Inverse of [`ModeIndex::flat`].
    pub fn from_flat(spec: &LatticeSpec, basis: Basis, idx: usize) -> Result<Self> {
        if idx >= spec.modes() {
            return Err(LatticeError::IndexOutOfRange(format!("flat index {idx}")));
        }
        Ok(match basis {
            Basis::Boundary => ModeIndex::Boundary(idx),
            Basis::Bulk if idx < spec.ring() => ModeIndex::Scale(idx),
            Basis::Bulk => {
                let r = (idx / spec.ring()).ilog2() as usize;
                ModeIndex::Wavelet { r, m: idx - spec.block_offset(r) }
            }
        })
    }
}
