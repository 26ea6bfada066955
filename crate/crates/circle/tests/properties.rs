use conelab_circle::*;
use conelab_linop::{c64, re, schatten_norm, LinearOperator};
use proptest::prelude::*;

fn poly(max_deg: i64) -> impl Strategy<Value = TrigPolynomial> {
    prop::collection::vec((-max_deg..=max_deg, -1.0f64..1.0, -1.0f64..1.0), 1..5)
        .prop_map(|v| TrigPolynomial::new(v.into_iter().map(|(m, a, b)| (m, c64::new(a, b)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn conjugate_polynomial_evaluates_to_conjugate(p in poly(4), theta in 0.0f64..6.3) {
        prop_assert!((p.conj().eval(theta) - p.eval(theta).conj()).norm() < 1e-12);
    }

    #[test]
    fn guillemin_is_an_exact_isometry(n in 1usize..40) {
        let tr = CircleTruncation::new(n);
        let t = guillemin_transform_circle(&tr);
        let g = t.adjoint().compose(&t).unwrap();
        let id = LinearOperator::identity(tr.space().clone());
        prop_assert_eq!(g.sub(&id).unwrap().norm_max(), 0.0);
    }

    #[test]
    fn szego_commutator_norm_is_truncation_independent(p in poly(3), q in poly(3)) {
        let b = CircleSymbol::new(p, q);
        let norm_at = |n: usize| {
            let tr = CircleTruncation::new(n);
            let m = sheet_multiplication(&b, &tr);
            schatten_norm(&szego_projection(&tr).op().commutator(&m).unwrap(), 2.0).unwrap()
        };
        prop_assert!((norm_at(12) - norm_at(24)).abs() < 1e-10);
    }

    #[test]
    fn quantization_is_multiplicative_away_from_edges(b1 in poly(2), b2 in poly(2), c1 in poly(2), c2 in poly(2)) {
        let n = 20;
        let tr = CircleTruncation::new(n);
        let b = CircleSymbol::new(b1, b2);
        let c = CircleSymbol::new(c1, c2);
        let d = (b.degree() + c.degree()) as i64;
        let lhs = circle_pdo_quantize(&b, &tr).unwrap().compose(&circle_pdo_quantize(&c, &tr).unwrap()).unwrap();
        let rhs = circle_pdo_quantize(&b.mul(&c), &tr).unwrap();
        let diff = lhs.sub(&rhs).unwrap();
        for i in 0..tr.dim() {
            for j in 0..tr.dim() {
                let (mi, mj) = (tr.mode(i), tr.mode(j));
                if (d..=n as i64 - d).contains(&mi) && (d..=n as i64 - d).contains(&mj) {
                    prop_assert!(diff.entry(i, j).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn rational_inverse_multiplies_to_one(p in poly(2), theta in 0.0f64..6.3) {
        let f = CircleFunction::from(p.add(&TrigPolynomial::constant(re(4.5))));
        let g = f.inv().unwrap();
        prop_assert!((f.mul(&g).eval(theta) - re(1.0)).norm() < 1e-12);
    }
}
