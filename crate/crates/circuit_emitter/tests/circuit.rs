use approx::assert_abs_diff_eq;
use circuit_emitter::*;
use gaussian_engine::{ground_covariance, thermal_covariance, ZeroModePolicy};
use lattice_model::*;
use nalgebra::DMatrix;
use overlap_solver::OverlapTables;
use std::f64::consts::{LOG10_E, PI};
use wavelet_kernels::daubechies_filters;

fn spec(k: usize, l: usize, n: usize, m0: f64) -> LatticeSpec {
    LatticeSpec::new(daubechies_filters(k).unwrap(), l, n, m0).unwrap()
}

fn coupling(s: &LatticeSpec, target: Target) -> CouplingMatrix {
    match target {
        Target::Boundary => boundary_coupling(s).unwrap(),
        Target::Bulk => {
            let tables = OverlapTables::compute(s.family(), s.ring(), s.scales()).unwrap();
            bulk_coupling(s, &tables).unwrap()
        }
    }
}

fn policy(s: &LatticeSpec) -> Option<ZeroModePolicy> {
    (s.mass() == 0.0).then_some(ZeroModePolicy::Deflated)
}

#[test]
fn squeezing_follows_the_spectrum() {
    let s = spec(3, 10, 3, 1.0);
    let d = boundary_spectrum(&s).unwrap();
    let sq = squeezing_params(&s).unwrap();
    assert!(!sq.zero_mode_excluded);
    assert_eq!(sq.alpha.len(), 80);
    for &(j, a) in &sq.alpha {
        assert_eq!(a, -0.25 * d[j].ln());
    }
    assert_abs_diff_eq!(sq.alpha[0].1, 0.0, epsilon = 1e-12);

    let heavy = squeezing_params(&spec(3, 10, 3, 3.0)).unwrap();
    assert!(heavy.alpha.iter().all(|&(_, a)| a < 0.0));
}

#[test]
fn massless_squeezing_budget() {
    let sq = squeezing_params(&spec(3, 10, 4, 0.0)).unwrap();
    assert!(sq.zero_mode_excluded);
    assert_eq!(sq.alpha.len(), 159);
    assert!(sq.alpha.iter().all(|&(j, _)| j != 0));
    assert_abs_diff_eq!(sq.max_db(), 7.03, epsilon = 0.01);
    for (n, v) in [(3, 80.0), (4, 160.0), (5, 320.0)] {
        let sq = squeezing_params(&spec(3, 10, n, 0.0)).unwrap();
        let expected = 0.25 * (v / (2.0 * PI)).ln();
        assert_abs_diff_eq!(sq.max_alpha(), expected, epsilon = 1e-6);
        assert_abs_diff_eq!(sq.max_db(), 20.0 * expected * LOG10_E, epsilon = 1e-5);
    }
}

#[test]
fn gate_layout() {
    let s = spec(3, 10, 3, 0.0);
    let ground = emit_program(&s, Target::Boundary, None, EmitOptions::default()).unwrap();
    assert_eq!(ground.state_kind, StateKind::Ground);
    assert!(ground.metadata.zero_mode_excluded);
    assert!(!ground.gates.iter().any(|g| matches!(g, Gate::ThermalInit { .. })));
    assert_eq!(ground.gates.iter().filter(|g| matches!(g, Gate::Interferometer(_))).count(), 1);
    assert!(matches!(ground.gates.last(), Some(Gate::Interferometer(_))));
    assert_eq!(ground.gates.len(), 80);

    let m = spec(3, 10, 3, 1.0);
    let beta = 0.5;
    let thermal = emit_program(&m, Target::Bulk, Some(beta), EmitOptions::default()).unwrap();
    let d = boundary_spectrum(&m).unwrap();
    let temps: Vec<(usize, f64)> = thermal
        .gates
        .iter()
        .filter_map(|g| match g {
            Gate::ThermalInit { mode, temperature } => Some((*mode, *temperature)),
            _ => None,
        })
        .collect();
    assert_eq!(temps.len(), 80);
    for (j, t) in temps {
        assert_abs_diff_eq!(t, 1.0 / (beta * d[j]), epsilon = 1e-14);
    }
    assert!(matches!(thermal.gates[0], Gate::ThermalInit { .. }));
    assert!(matches!(thermal.gates[80], Gate::Squeeze { .. }));
    assert_eq!(thermal.beta, Some(beta));
}

#[test]
fn emission_errors() {
    let strict = EmitOptions { givens: false, allow_deflated: false };
    assert!(matches!(
        emit_program(&spec(3, 10, 3, 0.0), Target::Boundary, None, strict),
        Err(CircuitError::SingularNoPolicy)
    ));
    assert!(emit_program(&spec(3, 10, 3, 0.4), Target::Boundary, None, strict).is_ok());
    for beta in [0.0, -1.0, f64::INFINITY, f64::NAN] {
        assert!(emit_program(&spec(3, 10, 3, 0.4), Target::Boundary, Some(beta), strict).is_err());
    }
}

#[test]
fn programs_reproduce_target_covariances() {
    for m0 in [0.0, 1.0] {
        let s = spec(3, 10, 3, m0);
        for target in [Target::Boundary, Target::Bulk] {
            let program = emit_program(&s, target, None, EmitOptions::default()).unwrap();
            let state = ground_covariance(&coupling(&s, target), policy(&s)).unwrap();
            let err = max_deviation(&program, &state).unwrap();
            assert!(err < 1e-8, "ground m0={m0} {target:?}: {err:e}");
        }
    }
    let s = spec(3, 10, 3, 1.0);
    for target in [Target::Boundary, Target::Bulk] {
        let program = emit_program(&s, target, Some(0.5), EmitOptions::default()).unwrap();
        let state = thermal_covariance(&coupling(&s, target), 0.5, None).unwrap();
        let err = max_deviation(&program, &state).unwrap();
        assert!(err < 1e-8, "thermal {target:?}: {err:e}");
    }
}

#[test]
fn deviation_detects_wrong_targets() {
    let s = spec(3, 10, 3, 1.0);
    let program = emit_program(&s, Target::Boundary, None, EmitOptions::default()).unwrap();
    let other = ground_covariance(&boundary_coupling(&s.with_mass(1.1).unwrap()).unwrap(), None).unwrap();
    assert!(max_deviation(&program, &other).unwrap() > 1e-3);
    let bulk = ground_covariance(&coupling(&s, Target::Bulk), None).unwrap();
    assert!(max_deviation(&program, &bulk).is_err());
}

#[test]
fn symplectic_factorization() {
    let s = spec(3, 10, 2, 0.7);
    for target in [Target::Boundary, Target::Bulk] {
        let program = emit_program(&s, target, None, EmitOptions::default()).unwrap();
        let y = program_symplectic(&program).unwrap();
        let omega = gaussian_engine::SymplecticForm::new(40).matrix();
        assert!((&y * &omega * y.transpose() - &omega).amax() < 1e-10);
        let state = ground_covariance(&coupling(&s, target), None).unwrap();
        assert!((&y * y.transpose() * 0.5 - state.gamma()).amax() < 1e-8);
    }
    let thermal = emit_program(&s, Target::Boundary, Some(1.0), EmitOptions::default()).unwrap();
    assert!(program_symplectic(&thermal).is_err());
}

#[test]
fn givens_examples() {
    let id = givens_decompose(&DMatrix::identity(5, 5)).unwrap();
    assert!(id.rotations.is_empty());
    assert_eq!(id.signs, vec![1.0; 5]);

    let phi: f64 = 0.7;
    let rot = DMatrix::from_row_slice(2, 2, &[phi.cos(), -phi.sin(), phi.sin(), phi.cos()]);
    let seq = givens_decompose(&rot).unwrap();
    assert_eq!(seq.rotations.len(), 1);
    assert_eq!((seq.rotations[0].mode_a, seq.rotations[0].mode_b), (0, 1));
    assert_abs_diff_eq!(seq.rotations[0].angle, phi, epsilon = 1e-15);

    let s = spec(3, 10, 2, 0.0);
    let m = wavelet_transform_matrix(&s).unwrap();
    let seq = givens_decompose(&m).unwrap();
    assert!(seq.rotations.len() <= 40 * 39 / 2);
    assert!((compose_givens(&seq).unwrap() - &m).amax() < 1e-8);

    let mut bad = m.clone();
    bad[(0, 0)] += 1e-3;
    assert!(matches!(givens_decompose(&bad), Err(CircuitError::NotOrthogonal(_))));
}

#[test]
fn givens_programs_simulate_like_dense_programs() {
    let s = spec(3, 10, 2, 0.5);
    let options = EmitOptions { givens: true, allow_deflated: true };
    let mut program = emit_program(&s, Target::Bulk, None, options).unwrap();
    let dense = simulate(&program).unwrap();
    if let Some(Gate::Interferometer(i)) = program.gates.last_mut() {
        assert!(i.givens.is_some());
        i.matrix = None;
    }
    assert!((simulate(&program).unwrap() - dense).amax() < 1e-10);
}

#[test]
fn json_round_trip() {
    let s = spec(3, 10, 2, 0.0);
    let program = emit_program(&s, Target::Boundary, Some(2.0), EmitOptions { givens: true, allow_deflated: true }).unwrap();
    let text = program.to_json().unwrap();
    for key in ["\"version\"", "\"modes\"", "\"target\": \"boundary\"", "\"state_kind\": \"thermal\"", "\"beta\"",
        "\"type\": \"thermal_init\"", "\"type\": \"squeeze\"", "\"type\": \"interferometer\"", "\"max_squeeze_db\"",
        "\"zero_mode_excluded\": true", "\"givens\"", "\"matrix\""] {
        assert!(text.contains(key), "missing {key}");
    }
    assert!(text.contains("\"beta\": 2.0000000000000000e+0"));
    let back = CircuitProgram::from_json(&text).unwrap();
    assert_eq!(back, program);
    assert_eq!(back.to_json().unwrap(), text);

    let ground = emit_program(&s, Target::Bulk, None, EmitOptions::default()).unwrap();
    assert!(!ground.to_json().unwrap().contains("\"beta\""));
    assert!(CircuitProgram::from_json(&text.replacen("\"version\": 1", "\"version\": 9", 1)).is_err());
}

#[test]
fn malformed_programs_are_rejected() {
    let s = spec(3, 10, 2, 0.5);
    let mut program = emit_program(&s, Target::Boundary, None, EmitOptions::default()).unwrap();
    program.gates.insert(0, Gate::Squeeze { mode: 40, alpha: 0.1 });
    assert!(matches!(simulate(&program), Err(CircuitError::Malformed(_))));
    program.gates.remove(0);
    if let Some(Gate::Interferometer(i)) = program.gates.last_mut() {
        i.matrix.as_mut().unwrap()[0][0] *= 2.0;
    }
    assert!(matches!(simulate(&program), Err(CircuitError::NotOrthogonal(_))));
}
