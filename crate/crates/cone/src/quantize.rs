use conelab_linop::faer::Mat;
use conelab_linop::{c64, Action, LinearOperator};

use crate::conormal::sheet_conormal;
use crate::cutoffs::CutoffSystem;
use crate::error::Result;
use crate::geometry::ConeGeometry;
use crate::guillemin::{check_cutoffs, dft_columns, double_multiplication};
use crate::symbol::ConeSymbol;

/// `τ_Ψ(a) = χ₂²·E*F*(M_{a₊}P₊ + M_{a₋}P₋)FE + χ₁·𝐀(−i∂/∂t)·χ₁` on `L²(M)`.
pub fn cone_quantize(
    a: &ConeSymbol,
    geo: &ConeGeometry,
    cs: &CutoffSystem,
) -> Result<LinearOperator> {
    check_cutoffs(geo, cs)?;
    let dim_m = geo.manifold_dim();
    let n = geo.n();
    let d = geo.double_dim();
    let mut tau = Mat::<c64>::zeros(dim_m, dim_m);

    let copy1: Vec<usize> = (0..dim_m)
        .filter(|&p| geo.double_position(p).is_some())
        .collect();
    let x = dft_columns(geo, &copy1)?;
    let mut xp = Mat::<c64>::zeros(d, copy1.len());
    let mut xm = Mat::<c64>::zeros(d, copy1.len());
    for c in 0..copy1.len() {
        for r in 0..d {
            if r >= n {
                xp[(r, c)] = x[(r, c)];
            } else {
                xm[(r, c)] = x[(r, c)];
            }
        }
    }
    let plus = double_multiplication(geo, |sigma| a.on_double(geo, true, sigma));
    let minus = double_multiplication(geo, |sigma| a.on_double(geo, false, sigma));
    let y = plus.apply(xp.as_ref()) + minus.apply(xm.as_ref());
    let z = x.adjoint() * &y;
    for (r, &pr) in copy1.iter().enumerate() {
        let w = cs.chi2[pr] * cs.chi2[pr];
        if w == 0.0 {
            continue;
        }
        for (c, &pc) in copy1.iter().enumerate() {
            tau[(pr, pc)] = z[(r, c)] * w;
        }
    }

    let kernels = [
        sheet_conormal(&a.conormal().plus, geo).dense(),
        sheet_conormal(&a.conormal().minus, geo).dense(),
    ];
    let on_end: Vec<(usize, usize, usize)> = (0..dim_m)
        .filter(|&p| cs.chi1[p] != 0.0)
        .map(|p| {
            let (omega, k) = geo
                .cylinder_position(p)
                .expect("χ₁ vanishes at the middle of M");
            (p, usize::from(omega < 0), (k - geo.k_min()) as usize)
        })
        .collect();
    for &(pr, sr, kr) in &on_end {
        for &(pc, sc, kc) in &on_end {
            if sr == sc {
                tau[(pr, pc)] += kernels[sr][(kr, kc)] * (cs.chi1[pr] * cs.chi1[pc]);
            }
        }
    }
    Ok(LinearOperator::on(geo.manifold_space().clone(), tau)?)
}
