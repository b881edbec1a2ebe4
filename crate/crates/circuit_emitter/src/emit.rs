use lattice_model::{boundary_fourier_matrix, boundary_spectrum, wavelet_transform_matrix, LatticeSpec};
use nalgebra::DMatrix;
use std::f64::consts::LOG10_E;

use crate::givens::givens_decompose;
use crate::program::{CircuitProgram, Gate, Interferometer, Metadata, SpecSnapshot, StateKind, Target, SCHEMA_VERSION};
use crate::{CircuitError, Result};

/// Squeezing parameters α_j = −¼ ln d_j of the boundary normal modes.
#[derive(Debug, Clone, PartialEq)]
pub struct Squeezing {
    /// (normal mode j, α_j) for every squeezed mode.
    pub alpha: Vec<(usize, f64)>,
    /// The massless zero mode j = 0 is omitted.
    pub zero_mode_excluded: bool,
}

impl Squeezing {
    pub fn max_alpha(&self) -> f64 {
        self.alpha.iter().map(|(_, a)| a.abs()).fold(0.0, f64::max)
    }

    /// Largest squeezing in dB, 20·α_max·log₁₀e.
    pub fn max_db(&self) -> f64 {
        20.0 * self.max_alpha() * LOG10_E
    }
}

/// Computes α_j = −¼ ln d_j, leaving out the zero mode of a massless lattice.
pub fn squeezing_params(spec: &LatticeSpec) -> Result<Squeezing> {
    let d = boundary_spectrum(spec)?;
    let excluded = spec.mass() == 0.0;
    let alpha = d
        .iter()
        .enumerate()
        .filter(|&(j, _)| !(excluded && j == 0))
        .map(|(j, &dj)| (j, -0.25 * dj.ln()))
        .collect();
    Ok(Squeezing { alpha, zero_mode_excluded: excluded })
}

/// Emission switches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmitOptions {
    /// Also store each interferometer as a Givens sequence.
    pub givens: bool,
    /// For massless lattices, emit the program with the zero mode left in
    /// vacuum instead of failing.
    pub allow_deflated: bool,
}

impl Default for EmitOptions {
    fn default() -> Self {
        Self { givens: false, allow_deflated: true }
    }
}

fn interferometer_matrix(spec: &LatticeSpec, target: Target) -> Result<DMatrix<f64>> {
    let m_bd = boundary_fourier_matrix(spec.modes())?;
    Ok(match target {
        Target::Boundary => m_bd,
        Target::Bulk => m_bd * wavelet_transform_matrix(spec)?.transpose(),
    })
}

/// Emits the preparation program of the ground state (`beta = None`) or the
/// thermal state at inverse temperature β.
///
/// Gates: [ThermalInit T_j = 1/(βd_j)]* (thermal only), [Squeeze α_j]*,
/// [Interferometer M] with M = M_bd (boundary) or M_bd·M_bkᵀ (bulk).
pub fn emit_program(spec: &LatticeSpec, target: Target, beta: Option<f64>, options: EmitOptions) -> Result<CircuitProgram> {
    if let Some(b) = beta {
        if !(b > 0.0) || !b.is_finite() {
            return Err(CircuitError::InvalidArgument(format!("beta must be positive and finite, got {b}")));
        }
    }
    let squeezing = squeezing_params(spec)?;
    if squeezing.zero_mode_excluded && !options.allow_deflated {
        return Err(CircuitError::SingularNoPolicy);
    }
    let d = boundary_spectrum(spec)?;
    let mut gates = Vec::new();
    if let Some(b) = beta {
        gates.extend(squeezing.alpha.iter().map(|&(j, _)| Gate::ThermalInit { mode: j, temperature: 1.0 / (b * d[j]) }));
    }
    gates.extend(squeezing.alpha.iter().map(|&(j, a)| Gate::Squeeze { mode: j, alpha: a }));
    let m = interferometer_matrix(spec, target)?;
    let givens = if options.givens { Some(givens_decompose(&m)?) } else { None };
    let rows = (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect();
    gates.push(Gate::Interferometer(Interferometer { matrix: Some(rows), givens }));
    Ok(CircuitProgram {
        version: SCHEMA_VERSION,
        modes: spec.modes(),
        target,
        state_kind: if beta.is_some() { StateKind::Thermal } else { StateKind::Ground },
        beta,
        gates,
        metadata: Metadata {
            max_squeeze_db: squeezing.max_db(),
            zero_mode_excluded: squeezing.zero_mode_excluded,
            spec: SpecSnapshot { k: spec.family().k(), l: spec.ring(), n: spec.scales(), m0: spec.mass() },
        },
    })
}
