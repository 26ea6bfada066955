use conelab_circle::{
    hardy_projections, multiplication_operator, CircleTruncation, TrigPolynomial,
};
use conelab_index::*;
use conelab_linop::{c64, LinearOperator, Projection};
use proptest::prelude::*;

const TRUNCATION: usize = 96;

fn setup() -> (CircleTruncation, Projection) {
    let tr = CircleTruncation::new(TRUNCATION);
    let (p, _) = hardy_projections(&tr);
    (tr, p)
}

/// `e^{ikθ}(1 + εe^{ijθ})` with `|ε| < 1`, index `−k`; its inverse is truncated
/// from the geometric series, which is exact on the modes that matter to 1e−12.
fn symbol(k: i64, eps: c64, j: i64) -> (TrigPolynomial, TrigPolynomial) {
    let a = TrigPolynomial::exp_i(k).mul(&TrigPolynomial::new([(0, c64::new(1.0, 0.0)), (j, eps)]));
    let mut series = TrigPolynomial::zero();
    let mut term = c64::new(1.0, 0.0);
    for m in 0..40 {
        series = series.add(&TrigPolynomial::new([(m * j, term)]));
        term *= -eps;
    }
    (a, TrigPolynomial::exp_i(-k).mul(&series))
}

fn ops(tr: &CircleTruncation, f: &TrigPolynomial) -> LinearOperator {
    multiplication_operator(f, tr).unwrap()
}

fn index_of(
    p: &Projection,
    tr: &CircleTruncation,
    a: &(TrigPolynomial, TrigPolynomial),
    n: usize,
) -> IndexReport {
    index_via_character(p, &ops(tr, &a.0), &ops(tr, &a.1), n).unwrap()
}

fn eps_strategy() -> impl Strategy<Value = c64> {
    (0.0f64..0.5, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| c64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn index_is_constant_along_paths(k in -2i64..=2, eps in eps_strategy(), j in 1i64..=2) {
        let (tr, p) = setup();
        let expected = -k;
        for step in 0..5 {
            let s = step as f64 / 4.0;
            let r = index_of(&p, &tr, &symbol(k, eps * s, j), 1);
            prop_assert_eq!(r.index().unwrap(), expected);
        }
    }

    #[test]
    fn index_is_additive_on_products(k1 in -2i64..=2, k2 in -2i64..=2, e1 in eps_strategy(), e2 in eps_strategy()) {
        let (tr, p) = setup();
        let a = symbol(k1, e1, 1);
        let b = symbol(k2, e2, 2);
        let ab = (a.0.mul(&b.0), b.1.mul(&a.1));
        let ia = index_of(&p, &tr, &a, 1).index().unwrap();
        let ib = index_of(&p, &tr, &b, 1).index().unwrap();
        let iab = index_of(&p, &tr, &ab, 1).index().unwrap();
        prop_assert_eq!(iab, ia + ib);
    }

    #[test]
    fn index_is_conjugation_invariant(k in -2i64..=2, e in eps_strategy(), f in eps_strategy()) {
        let (tr, p) = setup();
        let a = symbol(k, e, 1);
        let u = symbol(0, f, 1);
        let conj = (u.0.mul(&a.0).mul(&u.1), u.0.mul(&a.1).mul(&u.1));
        let plain = index_of(&p, &tr, &a, 1).index().unwrap();
        prop_assert_eq!(index_of(&p, &tr, &conj, 1).index().unwrap(), plain);
    }

    #[test]
    fn orders_one_and_three_agree(k in -2i64..=2, e in eps_strategy()) {
        let (tr, p) = setup();
        let a = symbol(k, e, 1);
        let r1 = index_of(&p, &tr, &a, 1);
        let r3 = index_of(&p, &tr, &a, 3);
        if r1.is_conclusive() && r3.is_conclusive() {
            prop_assert_eq!(r1.rounded, r3.rounded);
        }
        prop_assert!(r1.is_conclusive());
    }

    #[test]
    fn character_index_matches_winding(k in -3i64..=3, e in eps_strategy()) {
        let (tr, p) = setup();
        let a = symbol(k, e, 1);
        let w = winding_of(|t| a.0.eval(t)).unwrap();
        prop_assert_eq!(index_of(&p, &tr, &a, 1).index().unwrap(), -w);
    }
}
