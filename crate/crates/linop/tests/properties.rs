use std::sync::Arc;

use conelab_linop::*;
use proptest::prelude::*;

fn space(n: usize) -> Arc<SpaceTag> {
    Arc::new(SpaceTag::indexed("h", n))
}

fn matrix(n: usize, m: usize) -> impl Strategy<Value = LinearOperator> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * m).prop_map(move |v| {
        LinearOperator::from_fn(space(m), space(n), |i, j| {
            let (a, b) = v[i * m + j];
            c64::new(a, b)
        })
    })
}

/// Hermitian operator with eigenvalues bounded away from zero.
fn gapped_hermitian(n: usize) -> impl Strategy<Value = LinearOperator> {
    (
        matrix(n, n),
        prop::collection::vec(prop_oneof![-3.0f64..-0.2, 0.2f64..3.0], n),
    )
        .prop_map(move |(g, d)| {
            let q = hermitian_eig(&g.add(&g.adjoint()).unwrap())
                .unwrap()
                .vectors;
            let lam =
                LinearOperator::diagonal(space(n), &d.iter().map(|&x| re(x)).collect::<Vec<_>>())
                    .unwrap();
            q.compose(&lam).unwrap().compose(&q.adjoint()).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn indicator_matches_positive_projection(t in (1usize..9).prop_flat_map(gapped_hermitian)) {
        let p = positive_spectral_projection(&t, 1e-9).unwrap();
        let f = spectral_function(&t, |l| if l > 0.0 { 1.0 } else { 0.0 }).unwrap();
        prop_assert!(p.op().sub(&f).unwrap().norm_max() < 1e-9);
    }

    #[test]
    fn bounded_transform_keeps_positive_projection(t in (1usize..9).prop_flat_map(gapped_hermitian)) {
        let p = positive_spectral_projection(&t, 1e-9).unwrap();
        let s = spectral_function(&t, |l| l / (1.0 + l * l).sqrt()).unwrap();
        let q = positive_spectral_projection(&s, 1e-9).unwrap();
        prop_assert_eq!(p.rank(), q.rank());
        prop_assert!(p.op().sub(q.op()).unwrap().norm_max() < 1e-9);
    }

    #[test]
    fn identity_function_returns_operator(t in (1usize..9).prop_flat_map(gapped_hermitian)) {
        let f = spectral_function(&t, |l| l).unwrap();
        prop_assert!(f.sub(&t).unwrap().norm_max() < 1e-9);
    }

    #[test]
    fn schatten_two_is_trace_of_gram(t in (1usize..8, 1usize..8).prop_flat_map(|(n, m)| matrix(n, m))) {
        let s2 = schatten_norm(&t, 2.0).unwrap();
        let tr = t.adjoint().compose(&t).unwrap().trace().unwrap().re;
        prop_assert!((s2 * s2 - tr).abs() <= 1e-10 * tr.max(1e-300));
        let sv = singular_values(&t).unwrap();
        prop_assert!((schatten_from_singular_values(&sv, 2.0) - s2).abs() <= 1e-10 * s2);
    }

    #[test]
    fn schatten_norms_are_monotone_in_p(t in (1usize..8, 1usize..8).prop_flat_map(|(n, m)| matrix(n, m))) {
        let a = schatten_norm(&t, 1.0).unwrap();
        let b = schatten_norm(&t, 2.0).unwrap();
        let c = schatten_norm(&t, f64::INFINITY).unwrap();
        prop_assert!(a + 1e-12 >= b && b + 1e-12 >= c);
    }

    #[test]
    fn kernel_of_adjoint_is_cokernel(
        (t, r) in (2usize..8, 2usize..8).prop_flat_map(|(n, m)| (matrix(n, m), 0usize..n.min(m)))
    ) {
        // force rank r by zeroing all but r singular values
        let svd = thin_svd(&t).unwrap();
        let k = svd.s.len();
        let low = faer::Mat::from_fn(t.nrows(), t.ncols(), |i, j| {
            let mut z = re(0.0);
            for l in 0..r.min(k) {
                z += svd.u[(i, l)] * (1.0 + l as f64) * svd.v[(j, l)].conj();
            }
            z
        });
        let t = LinearOperator::new(t.domain().clone(), t.codomain().clone(), low).unwrap();
        let d = fredholm_defect(&t, RANK_TOL).unwrap();
        let da = fredholm_defect(&t.adjoint(), RANK_TOL).unwrap();
        prop_assert_eq!(d.kernel_dim, da.cokernel_dim);
        prop_assert_eq!(d.rank, r);
        prop_assert_eq!(d.rank + d.kernel_dim, t.ncols());
        prop_assert_eq!(d.rank + d.cokernel_dim, t.nrows());
    }

    #[test]
    fn decompositions_are_deterministic(t in (1usize..9).prop_flat_map(gapped_hermitian)) {
        let a = hermitian_eig(&t).unwrap();
        let b = hermitian_eig(&t).unwrap();
        prop_assert_eq!(a.values, b.values);
        for i in 0..t.nrows() {
            for j in 0..t.ncols() {
                prop_assert_eq!(a.vectors.entry(i, j), b.vectors.entry(i, j));
            }
        }
    }
}
