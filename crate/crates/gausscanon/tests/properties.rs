//! Property-based invariants over randomized inputs.

use proptest::prelude::*;

use gausscanon::generation::{beam_splitter, distributed_tms, tms_cm};
use gausscanon::glocc::{d23_after_channel, tms_filter_on_symmetric};
use gausscanon::mat2::{self, rot, signed_svd, squeeze};
use gausscanon::phase_space::{reorder, BasisOrdering, CovMatrix, SymplecticTransform};
use gausscanon::three_mode::{block_det, block_entries, validate, LocalPurities, PAIRS};
use nalgebra::{DMatrix, Matrix2};

proptest! {
    #[test]
    fn euler_composed_blocks_are_symplectic(
        a in 0.0..std::f64::consts::TAU,
        b in 0.0..std::f64::consts::TAU,
        t in -2.0_f64..2.0,
    ) {
        let s = rot(a) * squeeze(t.exp()) * rot(b);
        let block = SymplecticTransform::from_local_blocks(&[s]).unwrap();
        prop_assert!(block.symplectic_defect() < 1e-9);
    }

    #[test]
    fn signed_svd_reconstructs_and_orders(
        m11 in -5.0_f64..5.0, m12 in -5.0_f64..5.0,
        m21 in -5.0_f64..5.0, m22 in -5.0_f64..5.0,
    ) {
        let m = Matrix2::new(m11, m12, m21, m22);
        let svd = signed_svd(&m);
        prop_assert!(svd.d_plus >= svd.d_minus.abs() - 1e-12);
        let back = rot(svd.left_angle)
            * Matrix2::new(svd.d_plus, 0.0, 0.0, svd.d_minus)
            * rot(svd.right_angle);
        prop_assert!((back - m).norm() < 1e-10);
    }

    #[test]
    fn reorder_is_involutive(entries in proptest::collection::vec(-3.0_f64..3.0, 36)) {
        let m = DMatrix::from_row_slice(6, 6, &entries);
        let round = reorder(&reorder(&m, BasisOrdering::ModeOrdered), BasisOrdering::XpOrdered);
        prop_assert_eq!(round, m);
    }

    #[test]
    fn tms_states_are_pure(r in 0.0_f64..3.0) {
        let g = tms_cm(r).unwrap();
        prop_assert!(g.purity_residual() < 1e-9);
        prop_assert!(g.is_physical(1e-8));
    }

    #[test]
    fn beam_splitters_preserve_vacuum(theta in 0.0..std::f64::consts::FRAC_PI_2) {
        let b = beam_splitter(theta);
        let v = CovMatrix::vacuum(3);
        let out = b.apply(&v).unwrap();
        prop_assert!(mat2::max_abs(&(out.matrix() - v.matrix())) < 1e-12);
    }

    #[test]
    fn realizability_matches_the_triangle_rule(
        l1 in 1.0_f64..6.0, l2 in 1.0_f64..6.0, l3 in 1.0_f64..6.0,
    ) {
        let mut sorted = [l1, l2, l3];
        sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let expected = sorted[0] + 1.0 <= sorted[1] + sorted[2] + 1e-12;
        prop_assert_eq!(validate([l1, l2, l3]).valid, expected);
    }

    #[test]
    fn block_determinant_identity(
        l1 in 1.0_f64..6.0, l2 in 1.0_f64..6.0, l3 in 1.0_f64..6.0,
    ) {
        if let Ok(p) = LocalPurities::new(l1, l2, l3) {
            for &(i, j) in PAIRS.iter() {
                let (dp, dm) = block_entries(&p, i, j);
                prop_assert!((dp * dm - block_det(&p, i, j)).abs() < 1e-8);
                prop_assert!(dp >= dm - 1e-12);
            }
        }
    }

    #[test]
    fn distributed_states_satisfy_characteristic_equation(
        s in 0.0_f64..3.0,
        theta in 0.0..std::f64::consts::FRAC_PI_2,
    ) {
        let dt = distributed_tms(s, theta).unwrap();
        prop_assert!(dt.gamma.purity_residual() < 1e-9);
        let l = dt.lambda.as_array();
        prop_assert!((l[0] + 1.0 - l[1] - l[2]).abs() < 1e-10);
    }

    #[test]
    fn symmetric_filter_range_and_order(lambda in 1.0_f64..8.0, chr in 1.0_f64..10.0) {
        let (l1p, l2p) = tms_filter_on_symmetric(lambda, chr.acosh()).unwrap();
        prop_assert!(l1p >= 1.0 - 1e-12);
        prop_assert!(l1p <= lambda + 1e-12);
        prop_assert!(l2p >= l1p - 1e-12);
    }

    #[test]
    fn filtered_distributed_block_det_sign(
        s in 0.1_f64..3.0,
        theta in 0.1..1.4_f64,
        chr in 1.1_f64..8.0,
        x in 0.1_f64..10.0,
    ) {
        // outside [sqrt(1/cosh r), sqrt(cosh r)] the output block determinant
        // is strictly negative
        let (dp, dm) = d23_after_channel(s, theta, chr.acosh(), x).unwrap();
        let inside = x >= (1.0 / chr).sqrt() && x <= chr.sqrt();
        if !inside {
            prop_assert!(dp * dm < 0.0, "dp = {dp}, dm = {dm}");
        }
    }
}
