use gaussian_engine::CovarianceState;
use lattice_model::Basis;
use nalgebra::DMatrix;

use crate::program::{CircuitProgram, Gate, Target};
use crate::{CircuitError, Result};

fn check_mode(mode: usize, v: usize) -> Result<()> {
    if mode >= v {
        return Err(CircuitError::Malformed(format!("gate on mode {mode} of {v}")));
    }
    Ok(())
}

fn passive(gate: &crate::Interferometer, v: usize) -> Result<DMatrix<f64>> {
    let m = gate.to_matrix()?;
    if m.nrows() != v {
        return Err(CircuitError::Malformed(format!("{}-mode interferometer in a {v}-mode program", m.nrows())));
    }
    let err = (m.transpose() * &m - DMatrix::identity(v, v)).amax();
    if !(err <= 1e-8) {
        return Err(CircuitError::NotOrthogonal(err));
    }
    let mut b = DMatrix::zeros(2 * v, 2 * v);
    b.view_mut((0, 0), (v, v)).copy_from(&m.transpose());
    b.view_mut((v, v), (v, v)).copy_from(&m.transpose());
    Ok(b)
}

fn squeezer(v: usize, mode: usize, alpha: f64) -> DMatrix<f64> {
    let mut s = DMatrix::identity(2 * v, 2 * v);
    s[(mode, mode)] = (2.0 * alpha).exp();
    s[(v + mode, v + mode)] = (-2.0 * alpha).exp();
    s
}

/// Runs the program on the vacuum Γ = I/2 and returns the final 2V×2V
/// covariance, ordered (q₀..q_{V−1}, p₀..p_{V−1}).
///
/// Thermal initialisation replaces the marginal of a still uncorrelated mode.
pub fn simulate(program: &CircuitProgram) -> Result<DMatrix<f64>> {
    let v = program.modes;
    let mut g = DMatrix::identity(2 * v, 2 * v) * 0.5;
    for gate in &program.gates {
        match gate {
            Gate::ThermalInit { mode, temperature } => {
                check_mode(*mode, v)?;
                if !(*temperature > 0.0) {
                    return Err(CircuitError::Malformed(format!("temperature {temperature} on mode {mode}")));
                }
                let nu = 0.5 / (1.0 / temperature).tanh();
                for idx in [*mode, v + mode] {
                    g.row_mut(idx).fill(0.0);
                    g.column_mut(idx).fill(0.0);
                    g[(idx, idx)] = nu;
                }
            }
            Gate::Squeeze { mode, alpha } => {
                check_mode(*mode, v)?;
                let (up, down) = ((2.0 * alpha).exp(), (-2.0 * alpha).exp());
                g.row_mut(*mode).scale_mut(up);
                g.column_mut(*mode).scale_mut(up);
                g.row_mut(v + mode).scale_mut(down);
                g.column_mut(v + mode).scale_mut(down);
            }
            Gate::Interferometer(i) => {
                let b = passive(i, v)?;
                g = &b * g * b.transpose();
            }
        }
    }
    Ok(g)
}

/// Total symplectic matrix Y of a ground-state program, with ½YYᵀ its output covariance.
pub fn program_symplectic(program: &CircuitProgram) -> Result<DMatrix<f64>> {
    let v = program.modes;
    let mut y = DMatrix::identity(2 * v, 2 * v);
    for gate in &program.gates {
        y = match gate {
            Gate::ThermalInit { .. } => {
                return Err(CircuitError::InvalidArgument("thermal programs are not a single symplectic map".into()))
            }
            Gate::Squeeze { mode, alpha } => {
                check_mode(*mode, v)?;
                squeezer(v, *mode, *alpha) * y
            }
            Gate::Interferometer(i) => passive(i, v)? * y,
        };
    }
    Ok(y)
}

/// Largest entry of |Γ_simulated − Γ_state|.
///
/// When the program leaves the zero mode in vacuum, both covariances are
/// first projected onto the complement of that mode (row 0 of the final
/// interferometer).
pub fn max_deviation(program: &CircuitProgram, state: &CovarianceState) -> Result<f64> {
    let v = program.modes;
    let basis = match program.target {
        Target::Boundary => Basis::Boundary,
        Target::Bulk => Basis::Bulk,
    };
    if state.modes() != v || state.basis() != basis {
        return Err(CircuitError::InvalidArgument("state does not match the program target".into()));
    }
    let mut diff = simulate(program)? - state.gamma();
    if program.metadata.zero_mode_excluded {
        let m = program
            .gates
            .iter()
            .rev()
            .find_map(|g| match g {
                Gate::Interferometer(i) => Some(i.to_matrix()),
                _ => None,
            })
            .ok_or_else(|| CircuitError::Malformed("no interferometer".into()))??;
        let u = m.row(0).transpose();
        let p = DMatrix::identity(v, v) - &u * u.transpose();
        let mut proj = DMatrix::zeros(2 * v, 2 * v);
        proj.view_mut((0, 0), (v, v)).copy_from(&p);
        proj.view_mut((v, v), (v, v)).copy_from(&p);
        diff = &proj * diff * &proj;
    }
    Ok(diff.amax())
}
