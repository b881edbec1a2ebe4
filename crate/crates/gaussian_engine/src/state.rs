use lattice_model::{Basis, CouplingMatrix, LatticeSpec, ModeIndex};
use nalgebra::{DMatrix, DVector};

use crate::rows::{boundary_rows, mode_weights};
use crate::{GaussianError, Result};

/// Treatment of the massless k = 0 normal mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroModePolicy {
    /// Drop the mode from both blocks (pseudo-inverse square root).
    Deflated,
    /// Floor normal-mode frequencies at ε.
    Regularized(f64),
}

#[derive(Debug, Clone, PartialEq)]
enum Blocks {
    Circulant { phi: Vec<f64>, pi: Vec<f64> },
    Dense { phi: DMatrix<f64>, pi: DMatrix<f64> },
}

/// Gaussian state Γ = Φ ⊕ Π of V modes with vanishing Φ–Π cross blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceState {
    spec: LatticeSpec,
    basis: Basis,
    policy: Option<ZeroModePolicy>,
    beta: Option<f64>,
    blocks: Blocks,
}

impl CovarianceState {
    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn policy(&self) -> Option<ZeroModePolicy> {
        self.policy
    }

    /// Inverse temperature, `None` for the ground state.
    pub fn beta(&self) -> Option<f64> {
        self.beta
    }

    pub fn modes(&self) -> usize {
        self.spec.modes()
    }

    /// First rows (Φ, Π) when the state is circulant.
    pub fn circulant_rows(&self) -> Option<(&[f64], &[f64])> {
        match &self.blocks {
            Blocks::Circulant { phi, pi } => Some((phi, pi)),
            Blocks::Dense { .. } => None,
        }
    }

    /// ⟨Φ_a Φ_b⟩ by flat mode index.
    pub fn phi_entry(&self, a: usize, b: usize) -> f64 {
        match &self.blocks {
            Blocks::Circulant { phi, .. } => phi[(b + phi.len() - a) % phi.len()],
            Blocks::Dense { phi, .. } => phi[(a, b)],
        }
    }

    /// ⟨Π_a Π_b⟩ by flat mode index.
    pub fn pi_entry(&self, a: usize, b: usize) -> f64 {
        match &self.blocks {
            Blocks::Circulant { pi, .. } => pi[(b + pi.len() - a) % pi.len()],
            Blocks::Dense { pi, .. } => pi[(a, b)],
        }
    }

    pub fn phi(&self) -> DMatrix<f64> {
        let v = self.modes();
        DMatrix::from_fn(v, v, |a, b| self.phi_entry(a, b))
    }

    pub fn pi(&self) -> DMatrix<f64> {
        let v = self.modes();
        DMatrix::from_fn(v, v, |a, b| self.pi_entry(a, b))
    }

    /// Full 2V×2V covariance in (Φ, Π) block ordering.
    pub fn gamma(&self) -> DMatrix<f64> {
        let idx: Vec<usize> = (0..self.modes()).collect();
        self.reduced_flat(&idx).expect("indices in range")
    }

    /// Reduced covariance of the given modes, ordered (Φ₁..Φ_k, Π₁..Π_k).
    pub fn reduced_covariance(&self, modes: &[ModeIndex]) -> Result<DMatrix<f64>> {
        let idx = modes
            .iter()
            .map(|m| self.flat_index(*m))
            .collect::<Result<Vec<_>>>()?;
        self.reduced_flat(&idx)
    }

    /// Reduced covariance by flat mode indices.
    pub fn reduced_flat(&self, idx: &[usize]) -> Result<DMatrix<f64>> {
        if idx.is_empty() {
            return Err(GaussianError::IndexOutOfRange("empty mode set".into()));
        }
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.modes()) {
            return Err(GaussianError::IndexOutOfRange(format!("mode {bad} of {}", self.modes())));
        }
        let k = idx.len();
        let mut g = DMatrix::zeros(2 * k, 2 * k);
        for (p, &a) in idx.iter().enumerate() {
            for (q, &b) in idx.iter().enumerate() {
                g[(p, q)] = self.phi_entry(a, b);
                g[(k + p, k + q)] = self.pi_entry(a, b);
            }
        }
        Ok(g)
    }

    /// Flat index of a mode in this state's basis.
    pub fn flat_index(&self, m: ModeIndex) -> Result<usize> {
        let ok = matches!(
            (self.basis, m),
            (Basis::Boundary, ModeIndex::Boundary(_)) | (Basis::Bulk, ModeIndex::Scale(_) | ModeIndex::Wavelet { .. })
        );
        if !ok {
            return Err(GaussianError::IndexOutOfRange(format!("{m:?} in {:?} basis", self.basis)));
        }
        m.flat(&self.spec).map_err(|e| GaussianError::IndexOutOfRange(e.to_string()))
    }
}

/// Ground state Γ = ½(K^{-1/2} ⊕ K^{1/2}).
pub fn ground_covariance(k: &CouplingMatrix, policy: Option<ZeroModePolicy>) -> Result<CovarianceState> {
    build(k, None, policy)
}

/// Thermal state Γ = ½(K^{-1/2}coth(βK^{1/2}) ⊕ K^{1/2}coth(βK^{1/2})).
pub fn thermal_covariance(k: &CouplingMatrix, beta: f64, policy: Option<ZeroModePolicy>) -> Result<CovarianceState> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(GaussianError::InvalidArgument(format!("beta must be positive, got {beta}")));
    }
    build(k, Some(beta), policy)
}

fn build(k: &CouplingMatrix, beta: Option<f64>, policy: Option<ZeroModePolicy>) -> Result<CovarianceState> {
    if let Some(ZeroModePolicy::Regularized(eps)) = policy {
        if !(eps > 0.0) {
            return Err(GaussianError::InvalidArgument(format!("regularization must be positive, got {eps}")));
        }
    }
    let blocks = match k.circulant_row() {
        Some(_) => {
            let (phi, pi) = boundary_rows(k, beta, policy)?;
            Blocks::Circulant { phi, pi }
        }
        None => dense_blocks(k, beta, policy)?,
    };
    Ok(CovarianceState { spec: k.spec().clone(), basis: k.basis(), policy, beta, blocks })
}

/// Matrix functions through the eigendecomposition of K + uuᵀ, where u is
/// the exact null vector of a massless K, so the zero mode is an isolated
/// eigenpair (1, u) that can be replaced according to the policy.
fn dense_blocks(k: &CouplingMatrix, beta: Option<f64>, policy: Option<ZeroModePolicy>) -> Result<Blocks> {
    let mut kmat = k.to_dense();
    let v = kmat.nrows();
    let null = k.null_vector();
    if let Some(u) = &null {
        if policy.is_none() {
            return Err(GaussianError::SingularNoPolicy);
        }
        kmat.ger(1.0, u, u, 1.0);
    }
    let scale = kmat.amax().max(1.0);
    let eig = kmat.symmetric_eigen();
    let mut wphi = DVector::zeros(v);
    let mut wpi = DVector::zeros(v);
    for (i, &lam) in eig.eigenvalues.iter().enumerate() {
        if lam < -1e-10 * scale {
            return Err(GaussianError::NotPositive(lam));
        }
        let d = lam.max(0.0).sqrt();
        let (a, b) = mode_weights(d, beta, policy, d <= 1e-9 * scale.sqrt())?;
        wphi[i] = a;
        wpi[i] = b;
    }
    let q = &eig.eigenvectors;
    let mut phi = q * DMatrix::from_diagonal(&wphi) * q.transpose();
    let mut pi = q * DMatrix::from_diagonal(&wpi) * q.transpose();
    if let Some(u) = &null {
        let (a1, b1) = mode_weights(1.0, beta, policy, false)?;
        let (a0, b0) = mode_weights(0.0, beta, policy, true)?;
        phi.ger(a0 - a1, u, u, 1.0);
        pi.ger(b0 - b1, u, u, 1.0);
    }
    symmetrize(&mut phi);
    symmetrize(&mut pi);
    Ok(Blocks::Dense { phi, pi })
}

fn symmetrize(m: &mut DMatrix<f64>) {
    let t = m.transpose();
    *m += t;
    *m *= 0.5;
}

