use approx::assert_abs_diff_eq;
use gaussian_engine::*;
use lattice_model::*;
use nalgebra::DMatrix;
use overlap_solver::OverlapTables;
use std::f64::consts::PI;
use wavelet_kernels::daubechies_filters;

fn spec(k: usize, l: usize, n: usize, m0: f64) -> LatticeSpec {
    LatticeSpec::new(daubechies_filters(k).unwrap(), l, n, m0).unwrap()
}

fn bulk(s: &LatticeSpec) -> CouplingMatrix {
    let tables = OverlapTables::compute(s.family(), s.ring(), s.scales()).unwrap();
    bulk_coupling(s, &tables).unwrap()
}

/// Direct normal-mode sum (1/V)Σ_j cos(2πjΔ/V)·w(d_j).
fn mode_sum(d: &[f64], delta: usize, w: impl Fn(f64) -> f64) -> f64 {
    let v = d.len();
    d.iter()
        .enumerate()
        .map(|(j, &dj)| (2.0 * PI * (j * delta % v) as f64 / v as f64).cos() * w(dj))
        .sum::<f64>()
        / v as f64
}

#[test]
fn symplectic_form_identities() {
    let o = SymplecticForm::new(3).matrix();
    assert_eq!(&o * &o, -DMatrix::<f64>::identity(6, 6));
    assert_eq!(o.transpose(), -o);
}

#[test]
fn one_mode_closed_forms() {
    let vac = DMatrix::identity(2, 2) * 0.5;
    assert_eq!(symplectic_spectrum(&vac).unwrap(), vec![0.5]);
    assert_abs_diff_eq!(entropy_bits(&vac).unwrap(), 0.0);
    assert_abs_diff_eq!(purity(&vac).unwrap(), 1.0, epsilon = 1e-15);
    let (beta, d) = (0.7, 1.3);
    let c = 1.0 / (beta * d as f64).tanh();
    let g = DMatrix::from_row_slice(2, 2, &[c / (2.0 * d), 0.0, 0.0, c * d / 2.0]);
    assert_abs_diff_eq!(symplectic_spectrum(&g).unwrap()[0], c / 2.0, epsilon = 1e-14);
    assert_abs_diff_eq!(purity(&g).unwrap(), 1.0 / c, epsilon = 1e-14);
    let g = DMatrix::identity(2, 2) * 1.5;
    assert_abs_diff_eq!(entropy_bits(&g).unwrap(), 2.0, epsilon = 1e-14);
    assert_abs_diff_eq!(mode_entropy(0.5), 0.0);
}

#[test]
fn spectrum_errors_and_clipping() {
    let bad = DMatrix::identity(2, 2) * 0.3;
    assert!(matches!(symplectic_spectrum(&bad), Err(GaussianError::NonPhysical(_))));
    assert!(matches!(symplectic_spectrum(&DMatrix::zeros(3, 3)), Err(GaussianError::BadShape(3, 3))));
    let near = DMatrix::identity(2, 2) * (0.5 - 1e-10);
    assert_eq!(symplectic_spectrum(&near).unwrap(), vec![0.5]);
}

#[test]
fn general_route_matches_block_route() {
    let s = spec(3, 10, 2, 0.5);
    let st = thermal_covariance(&boundary_coupling(&s).unwrap(), 2.0, None).unwrap();
    let g = st.reduced_flat(&[0, 3, 7, 12]).unwrap();
    let block = symplectic_spectrum(&g).unwrap();
    // A symplectic shear q → q, p → p + εq mixes the blocks without changing σ.
    let mut shear = DMatrix::<f64>::identity(8, 8);
    for i in 0..4 {
        shear[(4 + i, i)] = 0.3;
    }
    let mixed = &shear * g * shear.transpose();
    let general = symplectic_spectrum(&mixed).unwrap();
    for (a, b) in block.iter().zip(&general) {
        assert_abs_diff_eq!(a, b, epsilon = 1e-12);
    }
}

#[test]
fn massive_ground_states_are_pure() {
    let s = spec(3, 10, 2, 1.0);
    for k in [boundary_coupling(&s).unwrap(), bulk(&s)] {
        let st = ground_covariance(&k, None).unwrap();
        for sigma in symplectic_spectrum(&st.gamma()).unwrap() {
            assert_abs_diff_eq!(sigma, 0.5, epsilon = 1e-9);
        }
        assert!(entropy_bits(&st.gamma()).unwrap() < 1e-6);
    }
}

#[test]
fn massless_needs_policy() {
    let s = spec(3, 10, 2, 0.0);
    assert_eq!(ground_covariance(&boundary_coupling(&s).unwrap(), None).unwrap_err(), GaussianError::SingularNoPolicy);
    assert_eq!(ground_covariance(&bulk(&s), None).unwrap_err(), GaussianError::SingularNoPolicy);
    assert_eq!(
        thermal_covariance(&bulk(&s), 1.0, None).unwrap_err(),
        GaussianError::SingularNoPolicy
    );
    assert!(thermal_covariance(&bulk(&s), -1.0, Some(ZeroModePolicy::Deflated)).is_err());
}

#[test]
fn boundary_rows_match_mode_sums() {
    let s = spec(3, 10, 3, 0.0);
    let d = boundary_spectrum(&s).unwrap();
    let st = ground_covariance(&boundary_coupling(&s).unwrap(), Some(ZeroModePolicy::Deflated)).unwrap();
    let (phi, pi) = st.circulant_rows().unwrap();
    for delta in [0, 1, 5, 40] {
        let want_phi = mode_sum(&d, delta, |x| if x < 1e-9 { 0.0 } else { 0.5 / x });
        assert_abs_diff_eq!(phi[delta], want_phi, epsilon = 1e-12);
        assert_abs_diff_eq!(pi[delta], mode_sum(&d, delta, |x| 0.5 * x), epsilon = 1e-12);
    }
}

#[test]
fn thermal_spectrum_is_coth() {
    let s = spec(3, 10, 3, 1.0);
    let beta = 0.5;
    let mut want: Vec<f64> =
        boundary_spectrum(&s).unwrap().iter().map(|d| 0.5 / (beta * d).tanh()).collect();
    want.sort_by(f64::total_cmp);
    for k in [boundary_coupling(&s).unwrap(), bulk(&s)] {
        let st = thermal_covariance(&k, beta, None).unwrap();
        let got = symplectic_spectrum(&st.gamma()).unwrap();
        for (a, b) in got.iter().zip(&want) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-9);
        }
        assert!(entropy_bits(&st.gamma()).unwrap() > 0.0);
    }
}

#[test]
fn low_temperature_limit_is_ground() {
    for m0 in [0.0, 1.0] {
        let s = spec(3, 10, 3, m0);
        let d1 = boundary_spectrum(&s).unwrap()[1];
        let policy = Some(ZeroModePolicy::Deflated);
        for k in [boundary_coupling(&s).unwrap(), bulk(&s)] {
            let g0 = ground_covariance(&k, policy).unwrap().gamma();
            let gt = thermal_covariance(&k, 1e4 / d1, policy).unwrap().gamma();
            assert!((g0 - gt).amax() < 1e-8);
        }
    }
}

#[test]
fn bulk_state_is_transformed_boundary_state() {
    for m0 in [0.0, 0.7] {
        let s = spec(3, 10, 3, m0);
        let w = wavelet_transform_matrix(&s).unwrap();
        let policy = Some(ZeroModePolicy::Deflated);
        let bd = ground_covariance(&boundary_coupling(&s).unwrap(), policy).unwrap();
        let bk = ground_covariance(&bulk(&s), policy).unwrap();
        assert!((&w * bd.phi() * w.transpose() - bk.phi()).amax() < 1e-9);
        assert!((&w * bd.pi() * w.transpose() - bk.pi()).amax() < 1e-9);
        if m0 > 0.0 {
            let (a, b) = (purity(&bd.gamma()).unwrap(), purity(&bk.gamma()).unwrap());
            assert_abs_diff_eq!(a, b, epsilon = 1e-8);
        }
    }
}

#[test]
fn zero_mode_decouples_from_wavelets() {
    let s = spec(3, 10, 3, 0.0);
    let k = bulk(&s);
    let defl = ground_covariance(&k, Some(ZeroModePolicy::Deflated)).unwrap();
    let reg = ground_covariance(&k, Some(ZeroModePolicy::Regularized(1e-8))).unwrap();
    let l = s.ring();
    let v = s.modes();
    let diff_phi = (defl.phi().view((l, l), (v - l, v - l)) - reg.phi().view((l, l), (v - l, v - l))).amax();
    let diff_pi = (defl.pi().view((l, l), (v - l, v - l)) - reg.pi().view((l, l), (v - l, v - l))).amax();
    assert!(diff_phi < 1e-8 && diff_pi < 1e-8, "{diff_phi} {diff_pi}");
    assert!(reg.phi_entry(0, 0) > 1e6);
}

#[test]
fn deep_bulk_field_variance() {
    // ⟨Φ²⟩ at a wavelet mode of scale r is 2^{n−r−a} with a ≈ 3.18.
    let s = spec(3, 10, 3, 0.0);
    let st = ground_covariance(&bulk(&s), Some(ZeroModePolicy::Deflated)).unwrap();
    for r in 0..2 {
        let i = st.flat_index(ModeIndex::Wavelet { r, m: 3 }).unwrap();
        let a = (s.scales() - r) as f64 - st.phi_entry(i, i).log2();
        assert!((a - 3.18).abs() < 0.05 * 3.18, "r={r} a={a}");
    }
}

#[test]
fn reduced_covariance_layout() {
    let s = spec(3, 10, 2, 1.0);
    let st = ground_covariance(&bulk(&s), None).unwrap();
    let all: Vec<ModeIndex> = (0..s.modes()).map(|i| ModeIndex::from_flat(&s, Basis::Bulk, i).unwrap()).collect();
    assert_eq!(st.reduced_covariance(&all).unwrap(), st.gamma());
    let one = st.reduced_covariance(&[ModeIndex::Wavelet { r: 1, m: 4 }]).unwrap();
    assert_eq!(one.shape(), (2, 2));
    assert!(one[(0, 0)] * one[(1, 1)] >= 0.25 - 1e-12);
    assert!(matches!(st.reduced_covariance(&[ModeIndex::Boundary(0)]), Err(GaussianError::IndexOutOfRange(_))));
    assert!(matches!(st.reduced_flat(&[40]), Err(GaussianError::IndexOutOfRange(_))));
    assert!(st.reduced_flat(&[]).is_err());
}

#[test]
fn mutual_information_basics() {
    let s = spec(3, 10, 3, 0.0);
    let st = ground_covariance(&bulk(&s), Some(ZeroModePolicy::Deflated)).unwrap();
    let (a, b) = (ModeIndex::Wavelet { r: 2, m: 0 }, ModeIndex::Wavelet { r: 2, m: 7 });
    let ab = mutual_information(&st, a, b).unwrap();
    assert_abs_diff_eq!(ab, mutual_information(&st, b, a).unwrap(), epsilon = 1e-15);
    assert!(ab > 0.0);
    assert!(mutual_information(&st, a, a).is_err());
    assert_abs_diff_eq!(two_mode_mutual_information(0.6, 0.8, 0.0, 0.9, 0.7, 0.0).unwrap(), 0.0, epsilon = 1e-12);
}

#[test]
fn series_mutual_information_matches_spectral_route() {
    let spectral = |p1: f64, p2: f64, x: f64, q1: f64, q2: f64, y: f64| {
        let pair = DMatrix::from_row_slice(4, 4, &[p1, x, 0., 0., x, p2, 0., 0., 0., 0., q1, y, 0., 0., y, q2]);
        entropy_bits(&DMatrix::from_row_slice(2, 2, &[p1, 0., 0., q1])).unwrap()
            + entropy_bits(&DMatrix::from_row_slice(2, 2, &[p2, 0., 0., q2])).unwrap()
            - entropy_bits(&pair).unwrap()
    };
    for (x, y) in [(2e-3, -1e-3), (-5e-3, 4e-3), (1e-2, -2e-3)] {
        let (p1, p2, q1, q2) = (0.9, 1.1, 0.8, 0.5);
        let fast = two_mode_mutual_information(p1, p2, x, q1, q2, y).unwrap();
        let slow = spectral(p1, p2, x, q1, q2, y);
        assert!((fast - slow).abs() < 1e-8 * slow.abs().max(1e-6), "{fast} {slow}");
    }
    // Far below the cancellation floor the series keeps the leading scaling I ∝ x².
    let i1 = two_mode_mutual_information(0.9, 0.9, 1e-8, 0.6, 0.6, -1e-8).unwrap();
    let i2 = two_mode_mutual_information(0.9, 0.9, 2e-8, 0.6, 0.6, -2e-8).unwrap();
    assert!(i1 > 0.0 && (i2 / i1 - 4.0).abs() < 1e-6, "{i1} {i2}");
}

#[test]
fn massive_rows_keep_relative_precision() {
    let s = spec(3, 10, 10, 6.0 / 128.0);
    let k = boundary_coupling(&s).unwrap();
    let st = ground_covariance(&k, None).unwrap();
    let (phi, pi) = st.circulant_rows().unwrap();
    let d = boundary_spectrum(&s).unwrap();
    for delta in [0, 1, 3, 20] {
        assert_abs_diff_eq!(phi[delta], mode_sum(&d, delta, |x| 0.5 / x), epsilon = 1e-12);
        assert_abs_diff_eq!(pi[delta], mode_sum(&d, delta, |x| 0.5 * x), epsilon = 1e-12);
    }
    // Far tail: c(p) ~ e^{−m0 p}/√p, well below the direct-sum noise floor.
    let m0 = s.mass();
    let (p1, p2) = (1500usize, 2000usize);
    assert!(phi[p2] > 0.0 && phi[p2] < 1e-30);
    let slope = (phi[p2] / phi[p1]).ln() / (p2 - p1) as f64;
    let want = -m0 - 0.5 * (p2 as f64 / p1 as f64).ln() / (p2 - p1) as f64;
    assert!((slope / want - 1.0).abs() < 2e-3, "{slope} {want}");
    assert!(pi[p2] < 0.0);
}

#[test]
fn central_charge_of_free_boson() {
    let s = spec(3, 10, 7, 0.0);
    let k = boundary_coupling(&s).unwrap();
    let d1 = boundary_spectrum(&s).unwrap()[1];
    let c = |eps: f64| {
        let st = ground_covariance(&k, Some(ZeroModePolicy::Regularized(eps))).unwrap();
        central_charge(&st, 3, 6).unwrap()
    };
    let c0 = c(d1 * 1e-6);
    assert!((c0 - 0.997).abs() < 0.01, "c = {c0}");
    for eps in [1e-5, 1e-7, 1e-8] {
        assert!((c(d1 * eps) - c0).abs() < 1e-4);
    }
    let st = ground_covariance(&k, Some(ZeroModePolicy::Regularized(d1 * 1e-6))).unwrap();
    assert!(central_charge(&st, 3, 3).is_err());
    let bk = ground_covariance(&bulk(&spec(3, 10, 2, 1.0)), None).unwrap();
    assert!(central_charge(&bk, 3, 6).is_err());
}

#[test]
fn interval_purity_follows_power_law() {
    // tr ρ² ∝ [V sin(πℓ/V)]^{−c/4}: local log-slope against ln ℓ near −1/4.
    let s = spec(3, 10, 7, 0.0);
    let k = boundary_coupling(&s).unwrap();
    let d1 = boundary_spectrum(&s).unwrap()[1];
    let st = ground_covariance(&k, Some(ZeroModePolicy::Regularized(d1 * 1e-6))).unwrap();
    let v = s.modes() as f64;
    let p = |l: usize| purity(&st.reduced_flat(&(0..l).collect::<Vec<_>>()).unwrap()).unwrap();
    let chord = |l: usize| (v * (PI * l as f64 / v).sin()).ln();
    let slope = (p(16).ln() - p(8).ln()) / (chord(16) - chord(8));
    assert!((slope + 0.25).abs() < 0.01, "slope {slope}");
}

#[test]
fn heavy_mass_rows_match_mode_sums() {
    for m0 in [1.84, 2.5, 4.0] {
        let s = spec(3, 10, 3, m0);
        let st = ground_covariance(&boundary_coupling(&s).unwrap(), None).unwrap();
        let (phi, pi) = st.circulant_rows().unwrap();
        let d = boundary_spectrum(&s).unwrap();
        for delta in 0..6 {
            assert_abs_diff_eq!(phi[delta], mode_sum(&d, delta, |x| 0.5 / x), epsilon = 1e-13);
            assert_abs_diff_eq!(pi[delta], mode_sum(&d, delta, |x| 0.5 * x), epsilon = 1e-13);
        }
    }
}
