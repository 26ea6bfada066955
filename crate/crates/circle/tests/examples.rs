use conelab_circle::*;
use conelab_linop::faer::Mat;
use conelab_linop::{c64, norm_fro, re, schatten_norm, LinearOperator};

fn max_abs(m: conelab_linop::faer::MatRef<'_, c64>) -> f64 {
    let mut x: f64 = 0.0;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            x = x.max(m[(i, j)].norm());
        }
    }
    x
}

#[test]
fn multiplication_by_one_is_identity() {
    let tr = CircleTruncation::new(6);
    let m = multiplication_operator(&TrigPolynomial::one(), &tr).unwrap();
    let id = LinearOperator::identity(tr.space().clone());
    assert_eq!(max_abs(m.sub(&id).unwrap().mat()), 0.0);
}

#[test]
fn multiplication_by_exp_is_subdiagonal_shift() {
    let tr = CircleTruncation::new(5);
    let m = multiplication_operator(&TrigPolynomial::exp_i(1), &tr).unwrap();
    for i in 0..tr.dim() {
        for j in 0..tr.dim() {
            let expect = if i == j + 1 { 1.0 } else { 0.0 };
            assert_eq!(m.entry(i, j), re(expect));
        }
    }
}

#[test]
fn degree_overflow_is_reported() {
    let tr = CircleTruncation::new(2);
    let err = multiplication_operator(&TrigPolynomial::exp_i(5), &tr).unwrap_err();
    assert!(matches!(
        err,
        CircleError::DegreeOverflow {
            degree: 5,
            limit: 4
        }
    ));
}

#[test]
fn product_with_conjugate_differs_at_the_lowest_mode() {
    // b = 2 + e^{iθ}: (M_b M_b*)_{n,n'} = Σ_{k kept} b_{n-k} conj(b_{n'-k}).
    // The only index missing from the full convolution is k = -N-1, reached
    // from n = n' = -N through b_1, so the defect is |b_1|^2 = 1 at (-N, -N).
    let tr = CircleTruncation::new(7);
    let b = TrigPolynomial::new([(0, re(2.0)), (1, re(1.0))]);
    let mb = multiplication_operator(&b, &tr).unwrap();
    let mbb = multiplication_operator(&b.mul(&b.conj()), &tr).unwrap();
    let d = mbb.sub(&mb.compose(&mb.adjoint()).unwrap()).unwrap();
    for i in 0..tr.dim() {
        for j in 0..tr.dim() {
            let expect = if i == 0 && j == 0 { 1.0 } else { 0.0 };
            assert!((d.entry(i, j) - re(expect)).norm() < 1e-14);
        }
    }
}

#[test]
fn hardy_projection_examples() {
    let tr = CircleTruncation::new(8);
    let (p, m) = hardy_projections(&tr);
    let e = |k: i64| tr.position(k).unwrap();
    assert_eq!(p.mat()[(e(5), e(5))], re(1.0));
    assert_eq!(m.mat()[(e(5), e(5))], re(0.0));
    assert_eq!(p.mat()[(e(-1), e(-1))], re(0.0));
    assert_eq!(p.rank(), 9);
    assert_eq!(p.op().trace().unwrap(), re(9.0));
}

#[test]
fn guillemin_examples() {
    let tr = CircleTruncation::new(6);
    let t = guillemin_transform_circle(&tr);
    let d = tr.dim();
    let i5 = tr.position(5).unwrap();
    let im2 = tr.position(-2).unwrap();
    for r in 0..2 * d {
        assert_eq!(t.entry(r, i5), re(if r == i5 { 1.0 } else { 0.0 }));
        assert_eq!(t.entry(r, im2), re(if r == d + im2 { 1.0 } else { 0.0 }));
    }
}

#[test]
fn guillemin_compression_defect_for_shift() {
    // T* diag(M_b, M_b) T = P₊ M_b P₊ + P₋ M_b P₋; for b = e^{iθ} the missing
    // cross term is P₊ M_b P₋, the single entry e_{-1} ↦ e_0.
    let tr = CircleTruncation::new(6);
    let t = guillemin_transform_circle(&tr);
    let b = CircleSymbol::scalar(TrigPolynomial::exp_i(1));
    let mb = multiplication_operator(&TrigPolynomial::exp_i(1), &tr).unwrap();
    let comp = t
        .adjoint()
        .compose(&sheet_multiplication(&b, &tr))
        .unwrap()
        .compose(&t)
        .unwrap();
    let d = mb.sub(&comp).unwrap();
    let (i0, im1) = (tr.position(0).unwrap(), tr.position(-1).unwrap());
    for i in 0..tr.dim() {
        for j in 0..tr.dim() {
            let expect = if (i, j) == (i0, im1) { 1.0 } else { 0.0 };
            assert_eq!(d.entry(i, j), re(expect));
        }
    }
}

#[test]
fn quantizing_unit_gives_identity() {
    let tr = CircleTruncation::new(9);
    let q = circle_pdo_quantize(&CircleSymbol::unit(), &tr).unwrap();
    assert_eq!(
        max_abs(
            q.sub(&LinearOperator::identity(tr.space().clone()))
                .unwrap()
                .mat()
        ),
        0.0
    );
}

#[test]
fn quantizing_shift_on_plus_sheet() {
    // b̂ = M_{e^{iθ}} P₊ + P₋: e_n ↦ e_{n+1} for 0 ≤ n < N, e_N ↦ 0, e_n ↦ e_n for n < 0.
    let tr = CircleTruncation::new(5);
    let q = circle_pdo_quantize(
        &CircleSymbol::new(TrigPolynomial::exp_i(1), TrigPolynomial::one()),
        &tr,
    )
    .unwrap();
    let n = tr.n() as i64;
    for j in 0..tr.dim() {
        let mj = tr.mode(j);
        for i in 0..tr.dim() {
            let mi = tr.mode(i);
            let expect = if mj >= 0 {
                mj < n && mi == mj + 1
            } else {
                mi == mj
            };
            assert_eq!(q.entry(i, j), re(if expect { 1.0 } else { 0.0 }));
        }
    }
}

#[test]
fn szego_projection_is_exact() {
    for n in [3, 17] {
        let tr = CircleTruncation::new(n);
        let t = guillemin_transform_circle(&tr);
        let pi = t.compose(&t.adjoint()).unwrap();
        assert_eq!(
            max_abs(pi.sub(szego_projection(&tr).op()).unwrap().mat()),
            0.0
        );
    }
}

#[test]
fn pdo_quantization_is_compatible_with_symbol() {
    let tr = CircleTruncation::new(10);
    let b = CircleSymbol::new(
        TrigPolynomial::new([(0, re(2.0)), (1, c64::new(0.5, 0.25)), (-2, re(0.3))]),
        TrigPolynomial::new([(0, re(1.0)), (-1, re(0.4))]),
    );
    let q = circle_pdo_quantize(&b, &tr).unwrap();
    let (p, _) = hardy_projections(&tr);
    let lhs = p.op().compose(&q).unwrap().compose(p.op()).unwrap();
    let mb = multiplication_operator(&b.plus.as_polynomial().unwrap(), &tr).unwrap();
    let rhs = p.op().compose(&mb).unwrap().compose(p.op()).unwrap();
    assert!(max_abs(lhs.sub(&rhs).unwrap().mat()) < 1e-15);
}

#[test]
fn rational_coefficients_match_geometric_series() {
    // 1/(2 + e^{iθ}) = (1/2) Σ_{k≥0} (-1/2)^k e^{ikθ}
    let f = CircleFunction::new(
        TrigPolynomial::one(),
        TrigPolynomial::new([(0, re(2.0)), (1, re(1.0))]),
    )
    .unwrap();
    let c = f.fourier_coefficients(20);
    for (idx, z) in c.iter().enumerate() {
        let m = idx as i64 - 20;
        let expect = if m >= 0 {
            0.5 * (-0.5f64).powi(m as i32)
        } else {
            0.0
        };
        assert!((z - re(expect)).norm() < 1e-14, "mode {m}: {z}");
    }
}

#[test]
fn toeplitz_fft_matches_dense() {
    let n = 300;
    let t = Toeplitz::new(n, |m| {
        c64::new(
            (m as f64 * 0.1).cos() / (1.0 + (m * m) as f64),
            (m as f64).sin() * 0.01,
        )
    });
    let x = Mat::from_fn(n, 3, |i, j| {
        c64::new((i * (j + 1)) as f64 * 0.01, -(i as f64) * 0.002)
    });
    use conelab_linop::Action;
    let d = t.dense();
    assert!(norm_fro((t.apply(x.as_ref()) - &d * &x).as_ref()) < 1e-12);
    assert!(norm_fro((t.apply_adjoint(x.as_ref()) - d.adjoint() * &x).as_ref()) < 1e-12);
}

#[test]
fn commutator_with_szego_is_finite_rank() {
    let b = CircleSymbol::scalar(TrigPolynomial::new([
        (0, re(1.0)),
        (2, re(0.5)),
        (-1, c64::new(0.0, 0.3)),
    ]));
    let norm_at = |n: usize| {
        let tr = CircleTruncation::new(n);
        let pi = szego_projection(&tr);
        let m = sheet_multiplication(&b, &tr);
        schatten_norm(&pi.op().commutator(&m).unwrap(), 2.0).unwrap()
    };
    let (a, c) = (norm_at(64), norm_at(128));
    assert!((a - c).abs() < 1e-10);
    assert!(a > 0.1);
}
