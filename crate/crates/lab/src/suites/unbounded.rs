//! Bounded normalization of unbounded complexes and the quadrature for
//! `(1 + Δ)^{−1/2}`.

use std::sync::Arc;

use conelab_circle::CircleTruncation;
use conelab_linop::faer::Mat;
use conelab_linop::{c64, hermitian_eig, norm_fro, spectral_function, LinearOperator, SpaceTag};
use conelab_resolution::{
    bounded_normalization, inverse_sqrt_quadrature, laplacians, normalization_report,
    unbounded_roll_up_check,
};

use super::resolution::{instances, Instance};
use super::{err, Cell, CellResult};
use crate::config::{Suite, ValidatedConfig};
use crate::report::{Row, Truncation, Verdict};

/// Bound on kernel, range and roll-up defects.
pub const NORMALIZATION_TOL: f64 = 1e-8;
/// Bound on the quadrature error.
pub const QUADRATURE_TOL: f64 = 1e-6;
/// Spectra beyond this are outside the quadrature's validated range.
pub const QUADRATURE_RANGE: f64 = 1e4;
/// Size of the fixed test spectrum.
pub const GRID_SIZE: usize = 64;

const S: Suite = Suite::Unbounded;

/// `‖quadrature(Δ) − (1 + Δ)^{−1/2}‖₂`.
pub fn quadrature_error(delta: &LinearOperator, nodes: usize) -> Result<f64, String> {
    let q = inverse_sqrt_quadrature(delta, nodes).map_err(err)?;
    let exact = spectral_function(delta, |l| 1.0 / (1.0 + l.max(0.0)).sqrt()).map_err(err)?;
    Ok(norm_fro((q.mat() - exact.mat()).as_ref()))
}

/// `F diag(λ) F*` with `λ_k = 10⁴ (k/(n−1))³` and `F` the unitary DFT.
pub fn grid_operator(n: usize) -> LinearOperator {
    let lambda: Vec<f64> = (0..n)
        .map(|k| QUADRATURE_RANGE * (k as f64 / (n - 1).max(1) as f64).powi(3))
        .collect();
    let s = 1.0 / (n as f64).sqrt();
    let f = Mat::from_fn(n, n, |i, j| {
        c64::from_polar(
            s,
            2.0 * std::f64::consts::PI * ((i * j) % n) as f64 / n as f64,
        )
    });
    let mut m = Mat::<c64>::zeros(n, n);
    for k in 0..n {
        for j in 0..n {
            let a = f[(j, k)].conj() * lambda[k];
            for i in 0..n {
                m[(i, j)] += f[(i, k)] * a;
            }
        }
    }
    let m = Mat::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    LinearOperator::on(Arc::new(SpaceTag::indexed("grid", n)), m).expect("square")
}

fn grid_cell(nodes: usize) -> CellResult {
    let e = quadrature_error(&grid_operator(GRID_SIZE), nodes)?;
    Ok(vec![Row::bound(
        S,
        "quadrature",
        "grid[0,1e4]",
        Truncation::circle(GRID_SIZE),
        e,
        QUADRATURE_TOL,
    )])
}

fn instance_cell(name: &str, inst: &Instance, n: usize, nodes: usize) -> CellResult {
    let tr = CircleTruncation::new(n);
    let res = inst.unbounded(&tr)?;
    let bounded = bounded_normalization(&res).map_err(err)?;
    let rep = normalization_report(&res, &bounded).map_err(err)?;
    let cmp = unbounded_roll_up_check(&res).map_err(err)?;
    let trunc = Truncation::circle(n);
    let max = |v: &[f64]| v.iter().copied().fold(0.0, f64::max);
    let mut out = vec![
        Row::bound(
            S,
            "normalized_norm",
            name,
            trunc.clone(),
            rep.max_norm,
            1.0 + 1e-12,
        ),
        Row::new(
            S,
            "ranks_agree",
            name,
            trunc.clone(),
            if rep.ranks_agree { 1.0 } else { 0.0 },
            Some(1.0),
            if rep.ranks_agree {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
        ),
        Row::bound(
            S,
            "kernels_preserved",
            name,
            trunc.clone(),
            max(&rep.kernel_defects),
            NORMALIZATION_TOL,
        ),
        Row::bound(
            S,
            "ranges_preserved",
            name,
            trunc.clone(),
            max(&rep.range_defects),
            NORMALIZATION_TOL,
        ),
        Row::bound(
            S,
            "dual_preserved",
            name,
            trunc.clone(),
            rep.dual_defect,
            NORMALIZATION_TOL,
        ),
        Row::bound(
            S,
            "roll_up_projection",
            name,
            trunc.clone(),
            cmp.projection_defect,
            NORMALIZATION_TOL,
        ),
        Row::bound(
            S,
            "roll_up_identity",
            name,
            trunc.clone(),
            cmp.identity_defect,
            NORMALIZATION_TOL,
        ),
    ];
    for (j, lap) in laplacians(&res).map_err(err)?.iter().enumerate() {
        let top = hermitian_eig(lap)
            .map_err(err)?
            .values
            .last()
            .copied()
            .unwrap_or(0.0);
        out.push(Row::info(
            S,
            format!("laplacian_max[{j}]"),
            name,
            trunc.clone(),
            top,
        ));
        if top <= QUADRATURE_RANGE {
            let e = quadrature_error(lap, nodes)?;
            out.push(Row::bound(
                S,
                format!("quadrature[{j}]"),
                name,
                trunc.clone(),
                e,
                QUADRATURE_TOL,
            ));
        }
    }
    Ok(out)
}

pub fn cells(cfg: &ValidatedConfig) -> Result<Vec<Cell<'_>>, String> {
    let n = cfg.config.resolution.unbounded_truncation;
    let nodes = cfg.config.resolution.quadrature_nodes;
    let mut out = vec![Cell::new(
        format!("unbounded/grid/N={GRID_SIZE}"),
        move || grid_cell(nodes),
    )];
    for (name, inst) in instances(cfg, n)? {
        if inst.length() == 0 {
            continue;
        }
        out.push(Cell::new(format!("unbounded/{name}/N={n}"), move || {
            instance_cell(&name, &inst, n, nodes)
        }));
    }
    Ok(out)
}
