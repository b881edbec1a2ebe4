use circuit_emitter::*;
use nalgebra::DMatrix;
use proptest::prelude::*;

fn orthogonal(v: usize, entries: &[f64]) -> DMatrix<f64> {
    let a = DMatrix::from_fn(v, v, |i, j| entries[i * v + j] + if i == j { 3.0 } else { 0.0 });
    a.qr().q()
}

fn matrix_strategy() -> impl Strategy<Value = DMatrix<f64>> {
    (1usize..12).prop_flat_map(|v| proptest::collection::vec(-1.0f64..1.0, v * v).prop_map(move |e| orthogonal(v, &e)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn givens_recompose(m in matrix_strategy()) {
        let seq = givens_decompose(&m).unwrap();
        let v = m.nrows();
        prop_assert!(seq.rotations.len() <= v * (v - 1) / 2);
        prop_assert!(seq.signs.iter().all(|s| s.abs() == 1.0));
        prop_assert!((compose_givens(&seq).unwrap() - &m).amax() < 1e-10);
    }

    #[test]
    fn interferometers_preserve_vacuum(m in matrix_strategy()) {
        let v = m.nrows();
        let rows = (0..v).map(|i| m.row(i).iter().copied().collect()).collect();
        let program = CircuitProgram {
            version: SCHEMA_VERSION,
            modes: v,
            target: Target::Boundary,
            state_kind: StateKind::Ground,
            beta: None,
            gates: vec![Gate::Interferometer(Interferometer { matrix: Some(rows), givens: None })],
            metadata: Metadata {
                max_squeeze_db: 0.0,
                zero_mode_excluded: false,
                spec: SpecSnapshot { k: 3, l: 10, n: 1, m0: 0.0 },
            },
        };
        let g = simulate(&program).unwrap();
        prop_assert!((g - DMatrix::identity(2 * v, 2 * v) * 0.5).amax() < 1e-12);
    }
}
