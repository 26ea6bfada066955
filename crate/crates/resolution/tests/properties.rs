use std::sync::Arc;

use conelab_circle::CircleTruncation;
use conelab_linop::{c64, norm_fro, spectral_function, LinearOperator, SpaceTag};
use conelab_resolution::*;
use proptest::prelude::*;

fn dims_strategy() -> impl Strategy<Value = Vec<usize>> {
    (0usize..=3).prop_flat_map(|n| proptest::collection::vec(1usize..=4, n + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn roll_up_preserves_indices(seed in 0u64..10_000, dims in dims_strategy()) {
        prop_assume!(!feasible_kernels(&dims).is_empty());
        let tr = CircleTruncation::new(8);
        let res = synth_resolution(seed, &dims, &tr).unwrap();
        let rows = equivalence_test(&res, &circle_battery()).unwrap();
        let expected = synth_shift_index(seed, &dims).unwrap();
        for r in &rows {
            prop_assert!(r.conclusive(), "{:?}", r);
            prop_assert!(r.agree(), "{:?}", r);
            if r.symbol == "shift" {
                prop_assert_eq!(r.via_projection.rounded, expected);
            }
        }
    }

    #[test]
    fn inductive_decomposition_holds(seed in 0u64..10_000, dims in dims_strategy()) {
        prop_assume!(dims.len() >= 2 && !feasible_kernels(&dims).is_empty());
        let tr = CircleTruncation::new(4);
        let res = synth_resolution(seed, &dims, &tr).unwrap();
        for k in 0..res.length() {
            let s = inductive_step(&res, k).unwrap();
            prop_assert!(s.block_defect < 1e-8 && s.projection_defect < 1e-8, "{:?}", s);
            prop_assert!(s.reduction_defect < 1e-8, "{:?}", s);
        }
    }

    #[test]
    fn normalization_keeps_the_dual_projection(seed in 0u64..10_000, dims in dims_strategy()) {
        prop_assume!(dims.len() >= 2 && !feasible_kernels(&dims).is_empty());
        let tr = CircleTruncation::new(6);
        let res = UnboundedResolution::synthetic(seed, &dims, &tr).unwrap();
        let b = bounded_normalization(&res).unwrap();
        let report = normalization_report(&res, &b).unwrap();
        prop_assert!(report.ranks_agree);
        prop_assert!(report.max_norm <= 1.0 + 1e-12);
        prop_assert!(report.dual_defect < 1e-8);
        let cmp = unbounded_roll_up_check(&res).unwrap();
        prop_assert!(cmp.projection_defect < 1e-8 && cmp.identity_defect < 1e-8, "{:?}", cmp);
    }

    #[test]
    fn quadrature_matches_closed_form(values in proptest::collection::vec(0.0f64..1e4, 1..12)) {
        let space = Arc::new(SpaceTag::indexed("D", values.len()));
        let d: Vec<c64> = values.iter().map(|&v| c64::new(v, 0.0)).collect();
        let delta = LinearOperator::diagonal(space, &d).unwrap();
        let q = inverse_sqrt_quadrature(&delta, DEFAULT_NODES).unwrap();
        let s = spectral_function(&delta, |l| 1.0 / (1.0 + l).sqrt()).unwrap();
        prop_assert!(norm_fro((q.mat() - s.mat()).as_ref()) < 1e-6);
    }

    #[test]
    fn generator_is_deterministic(seed in 0u64..10_000) {
        let tr = CircleTruncation::new(3);
        let a = synth_resolution(seed, &[2, 3, 1], &tr).unwrap();
        let b = synth_resolution(seed, &[2, 3, 1], &tr).unwrap();
        prop_assert_eq!(a.projection().mat(), b.projection().mat());
        for (x, y) in a.maps().iter().zip(b.maps()) {
            prop_assert_eq!(x.mat(), y.mat());
        }
    }
}
