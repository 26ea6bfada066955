use std::f64::consts::PI;

use conelab_circle::{CircleFunction, CircleSymbol, TrigPolynomial};
use conelab_cone::profile::{chi1, chi2, psi, t_of_s};
use conelab_cone::*;
use conelab_linop::faer::linalg::solvers::DenseSolveCore;
use conelab_linop::faer::Mat;
use conelab_linop::{c64, norm_fro, singular_values, Action, LinearOperator};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small() -> ConeGeometry {
    ConeGeometry::with_truncation(96).unwrap()
}

fn cayley() -> RationalSymbol {
    RationalSymbol::cayley_power(1)
}

fn shift_symbol() -> ConeSymbol {
    ConeSymbol::interior_only(CircleSymbol::new(
        CircleFunction::exp_i(1),
        CircleFunction::one(),
    ))
    .unwrap()
}

fn dist(a: &Mat<c64>, b: &Mat<c64>) -> f64 {
    norm_fro((a - b).as_ref())
}

#[test]
fn rational_cayley_values_and_limits() {
    let a = cayley();
    let i = c64::new(0.0, 1.0);
    for p in [-7.0, -1.0, 0.0, 0.3, 2.0, 50.0] {
        let want = (c64::new(p, 0.0) - i) / (c64::new(p, 0.0) + i);
        assert!((a.eval(p) - want).norm() < 1e-14);
    }
    assert!((a.limit() - c64::new(1.0, 0.0)).norm() < 1e-15);
    assert!((a.eval_inverse(0.0) - c64::new(1.0, 0.0)).norm() < 1e-15);
    let prod = a.mul(&a.inv().unwrap());
    for p in [-3.0, 0.0, 4.0] {
        assert!((prod.eval(p) - c64::new(1.0, 0.0)).norm() < 1e-14);
    }
}

#[test]
fn rational_rejects_real_poles_and_degree_mismatch() {
    let one = c64::new(1.0, 0.0);
    let zero = c64::new(0.0, 0.0);
    let err = RationalSymbol::from_coeffs(&[zero, one], &[c64::new(-2.0, 0.0), one]).unwrap_err();
    assert!(matches!(err, ConeError::PoleOnRealAxis { re, .. } if (re - 2.0).abs() < 1e-8));
    let err = RationalSymbol::from_coeffs(&[one], &[c64::new(0.0, 1.0), one]).unwrap_err();
    assert!(matches!(err, ConeError::DegreeMismatch { num: 0, den: 1 }));
}

#[test]
fn polynomial_roots_match_factors() {
    let roots = [
        c64::new(1.0, 2.0),
        c64::new(-0.5, -1.0),
        c64::new(3.0, 0.25),
    ];
    let mut p = Polynomial::constant(c64::new(2.0, 0.0));
    for r in roots {
        p = p.mul(&Polynomial::new(vec![-r, c64::new(1.0, 0.0)]));
    }
    let found = p.roots();
    for r in roots {
        assert!(
            found.iter().any(|z| (z - r).norm() < 1e-10),
            "missing root {r}"
        );
    }
}

#[test]
fn matching_violation_is_reported() {
    let interior = CircleSymbol::new(
        CircleFunction::constant(c64::new(2.0, 0.0)),
        CircleFunction::constant(c64::new(2.0, 0.0)),
    );
    let err = ConeSymbol::new(interior, ConormalFamily::one()).unwrap_err();
    assert!(
        matches!(err, ConeError::MatchingViolation { residual, .. } if (residual - 1.0).abs() < 1e-12)
    );
}

#[test]
fn embedding_then_restriction_is_identity() {
    let geo = small();
    let mut seen = vec![false; geo.double_dim()];
    let mut count = 0;
    for p in 0..geo.manifold_dim() {
        if let Some(q) = geo.double_position(p) {
            assert!(!seen[q]);
            seen[q] = true;
            count += 1;
            let sigma = (q as f64 - geo.n() as f64) * geo.h();
            assert!((geo.fold(sigma) - geo.s_of(p as i64 - geo.k_max())).abs() < 1e-12);
        }
    }
    assert!(count > geo.double_dim() / 2 - 2);
}

#[test]
fn t_on_double_is_smooth_and_matches_profile() {
    let geo = small();
    let l = geo.length();
    for k in 0..4000 {
        let sigma = -0.5 * l + l * k as f64 / 4000.0;
        let s = sigma.abs();
        if s <= 0.25 * l - 1.0 {
            assert_eq!(geo.double_t(sigma), t_of_s(sigma));
        }
    }
    // second differences stay bounded across the glue and the middle
    let d = 1e-3;
    let mut worst: f64 = 0.0;
    for k in 0..20000 {
        let sigma = -0.5 * l + l * k as f64 / 20000.0;
        let dd = geo.double_t(sigma + d) - 2.0 * geo.double_t(sigma) + geo.double_t(sigma - d);
        worst = worst.max((dd / (d * d)).abs());
    }
    assert!(worst < 5.0, "curvature {worst}");
    assert!(geo.double_t(0.25 * l) <= geo.t_cut());
    assert!(geo.double_t(0.25 * l) > geo.t_cut() - 1.0);
}

#[test]
fn geometry_validates_windows() {
    assert!(ConeGeometry::new(64, 10.0, 10.0, 9.0).is_err());
    assert!(ConeGeometry::new(64, 3.0, 10.0, 16.0).is_err());
    let g = ConeGeometry::with_step(0.05, 10.0, 10.0, 16.0).unwrap();
    assert!(g.h() <= 0.05 && g.h() > 0.049);
    let r = g.refined().unwrap();
    assert_eq!(r.n(), 2 * g.n());
}

#[test]
fn cutoff_partition_and_supports() {
    let geo = small();
    let cs = CutoffSystem::standard(&geo);
    assert!(cs.partition_defect() < 1e-12);
    for p in 0..geo.manifold_dim() {
        let t = geo.manifold_t(p);
        if t <= 1.0 {
            assert_eq!(cs.chi1[p], 0.0);
        }
        if t >= 3.0 {
            assert_eq!(cs.chi1[p], 1.0);
            assert_eq!(cs.chi2[p], 0.0);
        }
        if t >= 4.0 {
            assert_eq!(cs.psi[p], 0.0);
        }
        assert_eq!(cs.psi[p] * cs.chi2[p], cs.chi2[p]);
    }
    for t in [-1.0, 0.5, 1.7, 2.2, 2.9, 3.5, 5.0] {
        assert!((chi1(t).powi(2) + chi2(t).powi(2) - 1.0).abs() < 1e-12);
        assert!((0.0..=1.0).contains(&psi(t)));
    }
}

#[test]
fn conormal_of_one_is_identity() {
    let geo = small();
    let k = conormal_operator(&ConormalFamily::one(), &geo);
    let id = Mat::<c64>::identity(k.nrows(), k.ncols());
    assert!(dist(&k.mat().to_owned(), &id) < 1e-12);
}

#[test]
fn conormal_adjoint_is_conjugate_symbol() {
    let geo = small();
    let fam = ConormalFamily::new(cayley(), RationalSymbol::cayley_power(-2));
    let k = conormal_operator(&fam, &geo);
    let kc = conormal_operator(&fam.conj(), &geo);
    assert!(dist(&k.adjoint().into_mat(), &kc.into_mat()) < 1e-12);
}

/// Independent oracle: the multiplier applied to a Gaussian packet by
/// quadrature of its continuous Fourier transform.
#[test]
fn conormal_cayley_on_gaussian_packet() {
    let geo = ConeGeometry::new(1024, 10.0, 40.0, 40.0).unwrap();
    assert!(geo.h() <= 0.05);
    let fam = ConormalFamily::new(cayley(), RationalSymbol::one());
    let k = conormal_operator(&fam, &geo);
    let (p0, t0, width) = (5.0, 0.0, 1.5);
    let n = geo.sheet_dim();
    let ts: Vec<f64> = (0..n)
        .map(|i| geo.cylinder_t(geo.k_min() + i as i64))
        .collect();
    let packet =
        |t: f64| c64::from_polar((-(t - t0).powi(2) / (2.0 * width * width)).exp(), p0 * t);
    let mut u = vec![c64::new(0.0, 0.0); 2 * n];
    for i in 0..n {
        u[i] = packet(ts[i]);
    }
    let ku = k.apply(&u).unwrap();

    // û(p) = width·√(2π)·exp(−width²(p−p0)²/2)·e^{−i(p−p0)t0}; (Ku)(t) = (1/2π)∫A(p)û(p)e^{ipt} dp
    let a = cayley();
    let dp = 0.002;
    let ps: Vec<f64> = (-6000..=6000).map(|m| p0 + m as f64 * dp).collect();
    let weights: Vec<c64> = ps
        .iter()
        .map(|&p| {
            a.eval(p)
                * (width * (2.0 * PI).sqrt() * (-(width * width) * (p - p0).powi(2) / 2.0).exp())
                * (dp / (2.0 * PI))
        })
        .collect();
    let mut err2 = 0.0;
    let mut norm2 = 0.0;
    for i in 0..n {
        let t = ts[i];
        if (t - t0).abs() > 12.0 {
            continue;
        }
        let exact: c64 = ps
            .iter()
            .zip(&weights)
            .map(|(&p, w)| w * c64::from_polar(1.0, p * (t - t0)) * c64::from_polar(1.0, p0 * t0))
            .sum();
        err2 += (ku[i] - exact).norm_sqr() * geo.h();
        norm2 += exact.norm_sqr() * geo.h();
    }
    let scale = (c64::new(p0, -1.0)) / c64::new(p0, 1.0);
    let mut scaled2 = 0.0;
    for i in 0..n {
        scaled2 += (ku[i] - u[i] * scale).norm_sqr() * geo.h();
    }
    assert!(err2.sqrt() < 1e-4, "L2 error {}", err2.sqrt());
    assert!(norm2 > 1.0);
    // the packet is an approximate eigenvector; the deviation is first order
    // in the frequency spread 1/width of the packet
    let spread = (2.0 / (c64::new(p0, 1.0) * c64::new(p0, 1.0)).norm()) / width * norm2.sqrt();
    assert!(
        scaled2.sqrt() < spread,
        "scaled deviation {} vs {spread}",
        scaled2.sqrt()
    );
}

#[test]
fn guillemin_far_end_and_middle() {
    let geo = small();
    let cs = CutoffSystem::standard(&geo);
    let g = pseudo_guillemin(&geo, &cs).unwrap();
    let d = geo.double_dim();
    for p in 0..geo.manifold_dim() {
        let t = geo.manifold_t(p);
        let col: Vec<c64> = (0..geo.ambient_dim()).map(|r| g.entry(r, p)).collect();
        let s_star: f64 = col[..2 * d].iter().map(|z| z.norm_sqr()).sum();
        let cyl: f64 = col[2 * d..].iter().map(|z| z.norm_sqr()).sum();
        if t > 4.0 {
            assert_eq!(s_star, 0.0);
            assert!((cyl - 1.0).abs() < 1e-15);
        }
        if t < 1.0 {
            assert_eq!(cyl, 0.0);
        }
    }
}

/// Oracle for `ψT`: dense DFT and a Toeplitz matrix whose coefficients come
/// from direct quadrature rather than the FFT.
#[test]
fn guillemin_interior_matches_direct_assembly() {
    let geo = ConeGeometry::with_truncation(40).unwrap();
    let cs = CutoffSystem::standard(&geo);
    let g = pseudo_guillemin(&geo, &cs).unwrap();
    let d = geo.double_dim();
    let n = geo.n() as i64;
    let quad = 20000;
    let psi_coeff = |m: i64| -> c64 {
        (0..quad)
            .map(|k| {
                let theta = 2.0 * PI * k as f64 / quad as f64;
                let v = psi(geo.double_t(geo.sigma_of_angle(theta)));
                c64::from_polar(v / quad as f64, -(m as f64) * theta)
            })
            .sum()
    };
    let coeffs: Vec<c64> = (-2 * n..=2 * n).map(psi_coeff).collect();
    let mpsi = Mat::from_fn(d, d, |i, j| coeffs[(i as i64 - j as i64 + 2 * n) as usize]);
    for p in 0..geo.manifold_dim() {
        if cs.chi2[p] == 0.0 {
            continue;
        }
        let j = p as i64 - geo.k_max();
        let f = |mode: i64| {
            c64::from_polar(
                cs.chi2[p] / (d as f64).sqrt(),
                -2.0 * PI * (mode * j) as f64 / d as f64,
            )
        };
        let plus = Mat::from_fn(d, 1, |r, _| {
            if r as i64 >= n {
                f(r as i64 - n)
            } else {
                c64::new(0.0, 0.0)
            }
        });
        let minus = Mat::from_fn(d, 1, |r, _| {
            if (r as i64) < n {
                f(r as i64 - n)
            } else {
                c64::new(0.0, 0.0)
            }
        });
        let want_p = &mpsi * &plus;
        let want_m = &mpsi * &minus;
        for r in 0..d {
            assert!((g.entry(r, p) - want_p[(r, 0)]).norm() < 1e-10);
            assert!((g.entry(d + r, p) - want_m[(r, 0)]).norm() < 1e-10);
        }
    }
}

#[test]
fn guillemin_is_isometric_beyond_three() {
    let geo = ConeGeometry::with_truncation(DEFAULT_N).unwrap();
    let cs = CutoffSystem::standard(&geo);
    let g = pseudo_guillemin(&geo, &cs).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let far: Vec<usize> = (0..geo.manifold_dim())
        .filter(|&p| geo.manifold_t(p) > 3.0)
        .collect();
    for _ in 0..20 {
        let mut phi = vec![c64::new(0.0, 0.0); geo.manifold_dim()];
        for &p in &far {
            phi[p] = c64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        }
        let gp = g.apply(&phi).unwrap();
        let ggp = g.adjoint().apply(&gp).unwrap();
        let err: f64 = ggp
            .iter()
            .zip(&phi)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(err <= 1e-8, "defect {err}");
    }
}

#[test]
fn guillemin_norm_bound() {
    let geo = small();
    let cs = CutoffSystem::standard(&geo);
    let g = pseudo_guillemin(&geo, &cs).unwrap();
    let smax = singular_values(&g).unwrap()[0];
    let psi_max = cs.psi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(smax <= 2f64.sqrt() * (1.0 + psi_max));
}

#[test]
fn projection_matches_inverse_gram_formula() {
    let geo = small();
    let cs = CutoffSystem::standard(&geo);
    let g = pseudo_guillemin(&geo, &cs).unwrap();
    let tp = toeplitz_projection(&g).unwrap();
    assert_eq!(tp.kernel_dim(), 0);
    let p = tp.projection().unwrap();
    let gm = g.mat();
    let gram = gm.adjoint() * gm;
    let binv = gram.partial_piv_lu().inverse();
    let direct = gm * &binv * gm.adjoint();
    assert!(dist(&p.mat().to_owned(), &direct) < 1e-9);
    assert!(dist(&tp.inverse_gram().into_mat(), &binv) < 1e-9);
    let pp = p.mat() * p.mat();
    assert!(dist(&pp, &p.mat().to_owned()) < 1e-9);
    let rank_g = singular_values(&g)
        .unwrap()
        .iter()
        .filter(|&&s| s > 1e-8)
        .count();
    assert_eq!(p.rank(), rank_g);
    // ‖P − P̃‖ from the Gram spectrum agrees with the dense operator norm
    let diff = LinearOperator::on(p.space().clone(), p.mat() - tp.surrogate().mat()).unwrap();
    let dn = singular_values(&diff).unwrap()[0];
    assert!((dn - tp.surrogate_distance()).abs() < 1e-9);
}

#[test]
fn projection_of_isometry_is_its_surrogate() {
    let space = std::sync::Arc::new(conelab_linop::SpaceTag::indexed("X", 6));
    let dom = std::sync::Arc::new(conelab_linop::SpaceTag::indexed("Y", 3));
    let iso = LinearOperator::new(
        dom,
        space,
        Mat::from_fn(6, 3, |i, j| {
            if i == 2 * j {
                c64::new(1.0, 0.0)
            } else {
                c64::new(0.0, 0.0)
            }
        }),
    )
    .unwrap();
    let tp = toeplitz_projection(&iso).unwrap();
    assert_eq!(tp.kernel_dim(), 0);
    assert!(
        dist(
            &tp.projection().unwrap().mat().to_owned(),
            &tp.surrogate().into_mat()
        ) < 1e-14
    );
    assert!(tp.surrogate_distance() < 1e-14);
}

#[test]
fn quantize_unit_is_identity() {
    let geo = small();
    let cs = CutoffSystem::standard(&geo);
    let tau = cone_quantize(&ConeSymbol::unit(), &geo, &cs).unwrap();
    let id = Mat::<c64>::identity(geo.manifold_dim(), geo.manifold_dim());
    assert!(dist(&tau.into_mat(), &id) < 1e-10);
}

/// Oracle: dense Fourier matrix, dense interior multiplication from quadrature
/// of the transported symbol, and the constant conormal part `c·χ₁²`.
#[test]
fn quantize_interior_factor_matches_independent_assembly() {
    let geo = ConeGeometry::with_truncation(40).unwrap();
    let cs = CutoffSystem::standard(&geo);
    let b = CircleSymbol::new(
        CircleFunction::exp_i(2),
        TrigPolynomial::new([
            (0, c64::new(2.0 / 3.0, 0.0)),
            (-1, c64::new(1.0 / 3.0, 0.0)),
        ]),
    );
    let a = ConeSymbol::interior_only(b).unwrap();
    let tau = cone_quantize(&a, &geo, &cs).unwrap();

    let d = geo.double_dim();
    let n = geo.n() as i64;
    let quad = 1 << 15;
    let coeffs = |plus: bool| -> Vec<c64> {
        let samples: Vec<c64> = (0..quad)
            .map(|k| {
                a.on_double(
                    &geo,
                    plus,
                    geo.sigma_of_angle(2.0 * PI * k as f64 / quad as f64),
                )
            })
            .collect();
        (-2 * n..=2 * n)
            .map(|m| {
                samples
                    .iter()
                    .enumerate()
                    .map(|(k, v)| {
                        v * c64::from_polar(
                            1.0 / quad as f64,
                            -2.0 * PI * (m * k as i64) as f64 / quad as f64,
                        )
                    })
                    .sum()
            })
            .collect()
    };
    let (cp, cm) = (coeffs(true), coeffs(false));
    let mp = Mat::from_fn(d, d, |i, j| cp[(i as i64 - j as i64 + 2 * n) as usize]);
    let mm = Mat::from_fn(d, d, |i, j| cm[(i as i64 - j as i64 + 2 * n) as usize]);
    let f = Mat::from_fn(d, d, |r, c| {
        c64::from_polar(
            1.0 / (d as f64).sqrt(),
            -2.0 * PI * ((r as i64 - n) * (c as i64 - n)) as f64 / d as f64,
        )
    });
    let pp = Mat::from_fn(d, d, |i, j| {
        if i == j && i as i64 >= n {
            c64::new(1.0, 0.0)
        } else {
            c64::new(0.0, 0.0)
        }
    });
    let pm = Mat::<c64>::identity(d, d) - &pp;
    let interior = f.adjoint() * (&mp * &pp + &mm * &pm) * &f;
    let dm = geo.manifold_dim();
    let limit = a.stabilized(true);
    let want = Mat::from_fn(dm, dm, |r, c| {
        let mut v = c64::new(0.0, 0.0);
        if let (Some(qr), Some(qc)) = (geo.double_position(r), geo.double_position(c)) {
            v += interior[(qr, qc)] * cs.chi2[r] * cs.chi2[r];
        }
        if r == c {
            v += limit * cs.chi1[r] * cs.chi1[r];
        }
        v
    });
    assert!(dist(&tau.into_mat(), &want) < 1e-9);
}

#[test]
fn quantize_checks_grid() {
    let geo = small();
    let other = ConeGeometry::with_truncation(64).unwrap();
    let cs = CutoffSystem::standard(&other);
    assert!(matches!(
        cone_quantize(&ConeSymbol::unit(), &geo, &cs),
        Err(ConeError::GridMismatch(_))
    ));
    assert!(matches!(
        pseudo_guillemin(&geo, &cs),
        Err(ConeError::GridMismatch(_))
    ));
}

#[test]
fn multiplicativity_defect_converges() {
    let a = shift_symbol();
    let b = ConeSymbol::conormal_only(ConormalFamily::new(
        cayley(),
        RationalSymbol::cayley_power(-1),
    ))
    .unwrap();
    let mut defects = Vec::new();
    for n in [64, 128, 256] {
        let geo = ConeGeometry::with_truncation(n).unwrap();
        let cs = CutoffSystem::standard(&geo);
        let ta = cone_quantize(&a, &geo, &cs).unwrap();
        let tb = cone_quantize(&b, &geo, &cs).unwrap();
        let tab = cone_quantize(&a.mul(&b), &geo, &cs).unwrap();
        let prod = ta.mat() * tb.mat();
        defects.push(dist(&tab.into_mat(), &prod));
    }
    // the defect is a fixed compact operator: its 𝔖₂ norm settles under refinement
    let d1 = (defects[1] - defects[0]).abs();
    let d2 = (defects[2] - defects[1]).abs();
    assert!(d2 <= d1 + 1e-12, "{defects:?}");
    assert!(d2 < 1e-3 * defects[2], "{defects:?}");
}

#[test]
fn kernel_decay_of_separated_conormal_product() {
    let geo = ConeGeometry::with_truncation(256).unwrap();
    let fam = ConormalFamily::new(RationalSymbol::cayley_power(2), RationalSymbol::one());
    let k = sheet_conormal(&fam.plus, &geo).dense();
    let n = geo.sheet_dim();
    let ts: Vec<f64> = (0..n)
        .map(|i| geo.cylinder_t(geo.k_min() + i as i64))
        .collect();
    let a = |t: f64| 1.0 - profile::smoothstep(t - 2.0);
    let b = |t: f64| profile::smoothstep(t - 5.0);
    for power in [2, 4] {
        let envelope = |r0: f64| -> f64 {
            let mut sup: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let w = 1.0 + ts[i].abs() + ts[j].abs();
                    if w - 1.0 >= r0 {
                        sup = sup.max((k[(i, j)] * (a(ts[i]) * b(ts[j]))).norm() * w.powi(power));
                    }
                }
            }
            sup
        };
        let profile: Vec<f64> = [8.0, 10.0, 12.0, 14.0, 16.0]
            .iter()
            .map(|&r| envelope(r))
            .collect();
        for w in profile.windows(2) {
            assert!(w[1] <= w[0] * (1.0 + 1e-12), "power {power}: {profile:?}");
        }
    }
}

#[test]
fn toeplitz_quantize_unit_and_hardy_shift() {
    use conelab_circle::{hardy_projections, multiplication_operator, CircleTruncation};
    let tr = CircleTruncation::new(8);
    let (pp, _) = hardy_projections(&tr);
    let id = LinearOperator::identity(tr.space().clone());
    let c = toeplitz_quantize(&pp, &id).unwrap();
    assert!(dist(&c.into_mat(), &Mat::identity(9, 9)) < 1e-12);

    let s = multiplication_operator(&TrigPolynomial::exp_i(1), &tr).unwrap();
    let c = toeplitz_quantize(&pp, &s).unwrap();
    // the compression is the unilateral shift: one-dimensional kernel of the adjoint,
    // singular values 1 (×8) and 0
    let sv = singular_values(&c).unwrap();
    assert_eq!(sv.iter().filter(|&&x| (x - 1.0).abs() < 1e-12).count(), 8);
    assert!(sv[8] < 1e-12);
    // W(W*SW)W* = P S P
    let w = pp.range_basis().unwrap();
    let back = &w * c.mat() * w.adjoint();
    let psp = pp.mat() * s.mat() * pp.mat();
    assert!(dist(&back, &psp) < 1e-12);
}

#[test]
fn toeplitz_quantize_composition_defect() {
    let geo = ConeGeometry::with_truncation(64).unwrap();
    let cs = CutoffSystem::standard(&geo);
    let tp = toeplitz_projection(&pseudo_guillemin(&geo, &cs).unwrap()).unwrap();
    let p = tp.projection().unwrap();
    let a = shift_symbol();
    let b =
        ConeSymbol::conormal_only(ConormalFamily::new(cayley(), RationalSymbol::one())).unwrap();
    let (aa, ab) = (ConeAction::new(&a, &geo), ConeAction::new(&b, &geo));
    let (oa, ob) = (aa.to_operator(&geo), ab.to_operator(&geo));
    let oab = LinearOperator::on(
        geo.ambient_space().clone(),
        aa.apply(ab.to_dense().as_ref()),
    )
    .unwrap();
    let qa = toeplitz_quantize(&p, &oa).unwrap();
    let qb = toeplitz_quantize(&p, &ob).unwrap();
    let qab = toeplitz_quantize(&p, &oab).unwrap();
    let defect = qa.mat() * qb.mat() - qab.mat();
    let comm = p.mat() * ob.mat() - ob.mat() * p.mat();
    // P a P b P − P ab P = P a [P, b] P
    let w = p.range_basis().unwrap();
    let identity = w.adjoint() * oa.mat() * &comm * &w;
    assert!(norm_fro((&defect - &identity).as_ref()) < 1e-9);
    let bound = norm_fro(oa.mat()).max(1.0) * norm_fro(comm.as_ref());
    assert!(norm_fro(defect.as_ref()) <= bound);
    assert!(norm_fro(defect.as_ref()) <= 2.0 * norm_fro(comm.as_ref()));
    let compressed = tp.compress(&aa);
    assert_eq!(compressed.nrows(), tp.rank());
}
