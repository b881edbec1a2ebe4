use overlap_solver::{dsw_matrix, dww_matrix};
use proptest::prelude::*;
use wavelet_kernels::daubechies_filters;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ring_blocks_are_consistent(k in 3usize..=5, extra in 0usize..6, lev in 0usize..3) {
        let f = daubechies_filters(k).unwrap();
        let l = f.min_ring() + extra;
        let sw = dsw_matrix(&f, l, 3, lev).unwrap();
        for row in sw.row_iter() {
            prop_assert!(row.sum().abs() < 1e-8);
        }
        let ww = dww_matrix(&f, l, 3, lev, lev).unwrap();
        prop_assert!((&ww - ww.transpose()).amax() < 1e-10);
        // Circulant at a fixed scale: shifting both indices leaves entries unchanged.
        let size = l << lev;
        for a in 0..size {
            prop_assert!((ww[(a, (a + 1) % size)] - ww[(0, 1)]).abs() < 1e-10);
        }
    }
}
