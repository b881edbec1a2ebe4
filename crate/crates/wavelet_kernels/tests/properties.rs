use proptest::prelude::*;
use wavelet_kernels::*;

proptest! {
    #[test]
    fn integer_translates_partition_unity(k in 3usize..=5, x in 0.0f64..1.0) {
        let f = daubechies_filters(k).unwrap();
        let s = cascade_eval(&f, FunctionKind::Scale, 10).unwrap();
        let total: f64 = (0..f.support_end()).map(|t| s.eval(x + t as f64)).sum();
        prop_assert!((total - 1.0).abs() < 1e-3);
    }

    #[test]
    fn exp_averages_agree_with_taylor_for_small_mass(k in 3usize..=5, m in 1e-3f64..0.05) {
        let f = daubechies_filters(k).unwrap();
        let kk = f.k();
        let lead = m.powi(kk as i32) * wavelet_moment(&f, kk)
            / (1..=kk).map(|i| i as f64).product::<f64>();
        let next = m.powi(kk as i32 + 1) * wavelet_moment(&f, kk + 1)
            / (1..=kk + 1).map(|i| i as f64).product::<f64>();
        let v = wavelet_exp_average(&f, m, ExpSign::Plus).unwrap();
        prop_assert!((v - lead - next).abs() < 0.05 * lead.abs() + 1e-9);
    }
}
