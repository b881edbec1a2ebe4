//! Invariant suite behind `holomap verify`.

use circuit_emitter::{compose_givens, emit_program, givens_decompose, max_deviation, CircuitProgram, EmitOptions, StateKind, Target};
use gaussian_engine::{
    entropy_bits, ground_covariance, mutual_information, symplectic_spectrum, thermal_covariance, CovarianceState,
    ZeroModePolicy,
};
use holography::BulkCorrelator;
use lattice_model::{
    boundary_coupling, boundary_fourier_matrix, boundary_spectrum, bulk_coupling, wavelet_transform_matrix,
    CouplingMatrix, LatticeSpec, ModeIndex, OverlapMode,
};
use nalgebra::{DMatrix, SymmetricEigen};
use overlap_solver::quadrature::{fd_overlap_extrapolated, BasisFn};
use overlap_solver::OverlapTables;
use std::path::Path;
use wavelet_kernels::daubechies_filters;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::table::{Cell, Table};

enum Bound {
    AtMost(f64),
    AtLeast(f64),
}

struct Check {
    name: String,
    outcome: Result<(f64, Bound), CliError>,
}

impl Check {
    fn passed(&self) -> bool {
        match &self.outcome {
            Ok((v, Bound::AtMost(t))) => *v <= *t,
            Ok((v, Bound::AtLeast(t))) => *v >= *t,
            Err(_) => false,
        }
    }
}

type Measured = Result<(f64, Bound), CliError>;

fn massless_policy(spec: &LatticeSpec, policy: ZeroModePolicy) -> Option<ZeroModePolicy> {
    (spec.mass() == 0.0).then_some(policy)
}

fn regularized(spec: &LatticeSpec, cfg: &RunConfig) -> Result<Option<ZeroModePolicy>, CliError> {
    Ok(massless_policy(spec, ZeroModePolicy::Regularized(boundary_spectrum(spec)?[1] * cfg.epsilon)))
}

fn bulk_coupling_of(spec: &LatticeSpec) -> Result<CouplingMatrix, CliError> {
    let tables = OverlapTables::compute(spec.family(), spec.ring(), spec.scales())?;
    Ok(bulk_coupling(spec, &tables)?)
}

fn sorted_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut e: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect();
    e.sort_by(f64::total_cmp);
    e
}

fn filters(spec: &LatticeSpec) -> Measured {
    let h = spec.family().h();
    let mut worst = (h.iter().sum::<f64>() - 2f64.sqrt()).abs();
    for m in 0..spec.family().k() {
        let dot: f64 = (0..h.len() - 2 * m).map(|i| h[i] * h[i + 2 * m]).sum();
        worst = worst.max((dot - if m == 0 { 1.0 } else { 0.0 }).abs());
    }
    Ok((worst, Bound::AtMost(1e-10)))
}

fn sum_rules(spec: &LatticeSpec) -> Result<(f64, f64), CliError> {
    let row = overlap_solver::dss_row(spec.family())?;
    let second: f64 = row.iter().enumerate().map(|(m, d)| (m * m) as f64 * d).sum();
    let zero = row[0] + 2.0 * row[1..].iter().sum::<f64>();
    Ok(((second + 1.0).abs(), zero.abs()))
}

fn orthogonality(spec: &LatticeSpec) -> Measured {
    let w = wavelet_transform_matrix(spec)?;
    let v = w.nrows();
    Ok(((&w * w.transpose() - DMatrix::identity(v, v)).amax(), Bound::AtMost(1e-10)))
}

fn ehm(spec: &LatticeSpec) -> Result<(f64, f64), CliError> {
    let kbk = bulk_coupling_of(spec)?.to_dense();
    let w = wavelet_transform_matrix(spec)?;
    let kbd = boundary_coupling(spec)?.to_dense();
    let entries = (&kbk - &w * &kbd * w.transpose()).amax();
    let spectrum = sorted_eigenvalues(&kbk)
        .iter()
        .zip(sorted_eigenvalues(&kbd))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok((entries, spectrum))
}

fn zero_mode(spec: &LatticeSpec) -> Measured {
    Ok(((boundary_spectrum(spec)?[0] - spec.mass()).abs(), Bound::AtMost(1e-9)))
}

fn bulk_conjugation(spec: &LatticeSpec) -> Measured {
    let policy = massless_policy(spec, ZeroModePolicy::Deflated);
    let bd = ground_covariance(&boundary_coupling(spec)?, policy)?;
    let bk = ground_covariance(&bulk_coupling_of(spec)?, policy)?;
    let w = wavelet_transform_matrix(spec)?;
    let phi = (bk.phi() - &w * bd.phi() * w.transpose()).amax();
    let pi = (bk.pi() - &w * bd.pi() * w.transpose()).amax();
    Ok((phi.max(pi), Bound::AtMost(1e-8)))
}

fn subsystems(v: usize) -> Vec<Vec<usize>> {
    (0..24)
        .map(|s| {
            let mut idx: Vec<usize> = (0..1 + s % 6).map(|i| (7 * s + i * (s + 1)) % v).collect();
            idx.sort_unstable();
            idx.dedup();
            idx
        })
        .collect()
}

fn uncertainty(state: &CovarianceState) -> Measured {
    let mut least = f64::INFINITY;
    for idx in subsystems(state.modes()) {
        let sigma = symplectic_spectrum(&state.reduced_flat(&idx)?)?;
        least = sigma.into_iter().fold(least, f64::min);
    }
    Ok((least, Bound::AtLeast(0.5 - 1e-6)))
}

fn thermal_limit(spec: &LatticeSpec) -> Measured {
    let k = boundary_coupling(spec)?;
    let policy = massless_policy(spec, ZeroModePolicy::Deflated);
    let gap = boundary_spectrum(spec)?.into_iter().filter(|&d| d > 0.0).fold(f64::INFINITY, f64::min);
    let cold = thermal_covariance(&k, 40.0 / gap, policy)?;
    let ground = ground_covariance(&k, policy)?;
    Ok(((cold.gamma() - ground.gamma()).amax(), Bound::AtMost(1e-8)))
}

fn mi_nonnegative(spec: &LatticeSpec, physical: &CovarianceState) -> Measured {
    let deflated = ground_covariance(&boundary_coupling(spec)?, massless_policy(spec, ZeroModePolicy::Deflated))?;
    let bc = BulkCorrelator::new(&deflated, OverlapMode::Exact)?;
    let r = spec.scales() / 2;
    let js: Vec<usize> = (1..spec.block_len(r)).collect();
    let mut least = bc.same_scale_mutual_information(r, &js)?.into_iter().fold(f64::INFINITY, f64::min);
    for j in 1..=10.min(spec.modes() / 2) {
        least = least.min(mutual_information(physical, ModeIndex::Boundary(0), ModeIndex::Boundary(j))?);
    }
    Ok((least, Bound::AtLeast(-1e-12)))
}

fn overlap_oracle(spec: &LatticeSpec, cfg: &RunConfig) -> Measured {
    let (f, l, n) = (spec.family(), spec.ring(), spec.scales());
    let level = (cfg.resolution + 2).max(8);
    let tables = OverlapTables::compute(f, l, n)?;
    let quad = |a: BasisFn, b: BasisFn| fd_overlap_extrapolated(f, a, b, l, level);
    let mut worst: f64 = 0.0;
    for (m, &d) in tables.dss_row().iter().enumerate() {
        worst = worst.max((quad(BasisFn::scale_fn(0, 0), BasisFn::scale_fn(0, m as i64))? - d).abs());
    }
    let lev = 1.min(n - 1);
    let q = 2.0 * quad(BasisFn::wavelet(lev as u32, 0), BasisFn::scale_fn(0, 0))?;
    worst = worst.max((q - tables.dsw(lev)[(0, 0)]).abs());
    let q = 2.0 * quad(BasisFn::wavelet(0, 0), BasisFn::scale_fn(0, l as i64 - 1))?;
    worst = worst.max((q - tables.dsw(0)[(0, l - 1)]).abs());
    for (a, b) in [(0, 0), (1, 0), (3, 1)] {
        let q = quad(BasisFn::wavelet(lev as u32, a), BasisFn::wavelet(0, b))?;
        worst = worst.max((q - tables.dww(lev, 0)[(a as usize, b as usize)]).abs());
    }
    Ok((worst, Bound::AtMost(1e-4)))
}

/// Covariance a program is meant to prepare, rebuilt from its own metadata.
fn target_state(spec: &LatticeSpec, target: Target, beta: Option<f64>) -> Result<CovarianceState, CliError> {
    let k = match target {
        Target::Boundary => boundary_coupling(spec)?,
        Target::Bulk => bulk_coupling_of(spec)?,
    };
    let policy = massless_policy(spec, ZeroModePolicy::Deflated);
    Ok(match beta {
        Some(b) => thermal_covariance(&k, b, policy)?,
        None => ground_covariance(&k, policy)?,
    })
}

fn round_trip(spec: &LatticeSpec, target: Target, beta: Option<f64>) -> Measured {
    let program = emit_program(spec, target, beta, EmitOptions::default())?;
    Ok((max_deviation(&program, &target_state(spec, target, beta)?)?, Bound::AtMost(1e-8)))
}

fn givens(spec: &LatticeSpec) -> Measured {
    let m = boundary_fourier_matrix(spec.modes())?;
    Ok(((compose_givens(&givens_decompose(&m)?)? - &m).amax(), Bound::AtMost(1e-10)))
}

fn simulated_file(path: &Path) -> Result<Measured, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    let program = CircuitProgram::from_json(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    let s = &program.metadata.spec;
    let spec = LatticeSpec::new(daubechies_filters(s.k)?, s.l, s.n, s.m0)?;
    let beta = match program.state_kind {
        StateKind::Ground => None,
        StateKind::Thermal => Some(program.beta.ok_or_else(|| CliError::Validation("thermal program without beta".into()))?),
    };
    Ok(target_state(&spec, program.target, beta)
        .and_then(|state| Ok((max_deviation(&program, &state)?, Bound::AtMost(1e-8)))))
}

fn split(name: &str, pair: Result<(f64, f64), CliError>, tol: f64) -> [Check; 2] {
    let (a, b) = match pair {
        Ok((a, b)) => (Ok((a, Bound::AtMost(tol))), Ok((b, Bound::AtMost(tol)))),
        Err(e) => (Err(CliError::Numerical(e.to_string())), Err(e)),
    };
    let (first, second) = name.split_once('|').unwrap_or((name, name));
    [Check { name: first.into(), outcome: a }, Check { name: second.into(), outcome: b }]
}

/// Runs every check for the configured lattice; returns the table and whether any failed.
pub fn run(cfg: &RunConfig, spec: &LatticeSpec, simulate: Option<&Path>) -> Result<(Table, bool), CliError> {
    let check = |name: &str, outcome: Measured| Check { name: name.into(), outcome };
    let mut checks = vec![check("filter_orthonormality", filters(spec))];
    checks.extend(split("dss_second_moment|dss_zero_row_sum", sum_rules(spec), 1e-9));
    checks.push(check("transform_orthogonality", orthogonality(spec)));
    checks.extend(split("ehm_entries|ehm_spectrum", ehm(spec), 1e-8));
    checks.push(check("zero_mode", zero_mode(spec)));
    checks.push(check("bulk_state_conjugation", bulk_conjugation(spec)));

    let physical = regularized(spec, cfg).and_then(|p| Ok(ground_covariance(&boundary_coupling(spec)?, p)?));
    match &physical {
        Ok(state) => {
            checks.push(check("uncertainty_relation", uncertainty(state)));
            checks.push(check(
                "pure_state_entropy",
                entropy_bits(&state.gamma()).map(|s| (s, Bound::AtMost(1e-6))).map_err(CliError::from),
            ));
            checks.push(check("mutual_information_nonnegative", mi_nonnegative(spec, state)));
        }
        Err(e) => {
            for name in ["uncertainty_relation", "pure_state_entropy", "mutual_information_nonnegative"] {
                checks.push(check(name, Err(CliError::Numerical(e.to_string()))));
            }
        }
    }
    checks.push(check("thermal_limit", thermal_limit(spec)));
    checks.push(check("overlap_oracle", overlap_oracle(spec, cfg)));
    checks.push(check("circuit_boundary_ground", round_trip(spec, Target::Boundary, None)));
    checks.push(check("circuit_bulk_ground", round_trip(spec, Target::Bulk, None)));
    checks.push(check("circuit_thermal", round_trip(spec, Target::Boundary, Some(cfg.beta.unwrap_or(0.5)))));
    checks.push(check("givens_round_trip", givens(spec)));
    if let Some(path) = simulate {
        checks.push(check("simulate_program", simulated_file(path)?));
    }

    let mut t = Table::new(&["check", "value", "bound", "status", "detail"]);
    let mut failed = false;
    for c in &checks {
        let pass = c.passed();
        failed |= !pass;
        let status = if pass { "pass" } else { "fail" };
        let row = match &c.outcome {
            Ok((v, Bound::AtMost(b))) => vec![c.name.as_str().into(), (*v).into(), format!("<= {b:e}").as_str().into(), status.into(), "".into()],
            Ok((v, Bound::AtLeast(b))) => vec![c.name.as_str().into(), (*v).into(), format!(">= {b:e}").as_str().into(), status.into(), "".into()],
            Err(e) => vec![c.name.as_str().into(), Cell::Empty, "".into(), status.into(), e.to_string().as_str().into()],
        };
        t.push(row);
    }
    Ok((t, failed))
}
