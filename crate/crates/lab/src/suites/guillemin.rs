//! Exactness of the circle model and the Hardy index table.

use conelab_circle::{
    guillemin_transform_circle, hardy_projections, multiplication_operator, szego_projection,
    CircleTruncation, TrigPolynomial,
};
use conelab_index::{index_via_character, winding_of};
use conelab_linop::faer::Mat;
use conelab_linop::{c64, norm_fro};

use super::{err, Cell, CellResult};
use crate::config::{Suite, ValidatedConfig};
use crate::report::{Row, Truncation, Verdict};

/// Bound on `‖T*T − 1‖` and `‖Π² − Π‖`.
pub const EXACTNESS_TOL: f64 = 1e-12;
/// Residual below which a circle index is conclusive.
pub const CIRCLE_RESIDUAL_TOL: f64 = 1e-6;

const S: Suite = Suite::Guillemin;

fn exactness(n: usize) -> CellResult {
    let tr = CircleTruncation::new(n);
    let t = guillemin_transform_circle(&tr);
    let d = tr.dim();
    let tt = t.mat().adjoint() * t.mat() - Mat::<c64>::identity(d, d);
    let pi = szego_projection(&tr);
    let p = pi.mat();
    let idem = p * p - p;
    let trunc = Truncation::circle(n);
    Ok(vec![
        Row::bound(
            S,
            "transform_isometry",
            "-",
            trunc.clone(),
            norm_fro(tt.as_ref()),
            EXACTNESS_TOL,
        ),
        Row::bound(
            S,
            "szego_idempotent",
            "-",
            trunc,
            norm_fro(idem.as_ref()),
            EXACTNESS_TOL,
        ),
    ])
}

fn circle_index(n: usize, k: i64) -> CellResult {
    let tr = CircleTruncation::new(n);
    let (p, _) = hardy_projections(&tr);
    let a = multiplication_operator(&TrigPolynomial::exp_i(k), &tr).map_err(err)?;
    let ai = multiplication_operator(&TrigPolynomial::exp_i(-k), &tr).map_err(err)?;
    let r = index_via_character(&p, &a, &ai, 1).map_err(err)?;
    let oracle = -winding_of(|t| c64::from_polar(1.0, k as f64 * t)).map_err(err)?;
    let symbol = format!("exp_i({k})");
    let trunc = Truncation::circle(n);
    let conclusive = r.residual < CIRCLE_RESIDUAL_TOL;
    Ok(vec![
        Row::new(
            S,
            "circle_index",
            symbol.clone(),
            trunc.clone(),
            r.rounded as f64,
            Some(oracle as f64),
            Verdict::equal(r.rounded, oracle, conclusive),
        ),
        Row::bound(
            S,
            "circle_index_residual",
            symbol,
            trunc,
            r.residual,
            CIRCLE_RESIDUAL_TOL,
        ),
    ])
}

pub fn cells(cfg: &ValidatedConfig) -> Vec<Cell<'_>> {
    let c = &cfg.config.circle;
    let mut out = Vec::new();
    for &n in &c.truncations {
        out.push(Cell::new(format!("guillemin/exactness/N={n}"), move || {
            exactness(n)
        }));
    }
    let n = c.index_truncation;
    for &k in &c.windings {
        out.push(Cell::new(
            format!("guillemin/exp_i({k})/N={n}"),
            move || circle_index(n, k),
        ));
    }
    out
}
