//! The pseudo-Guillemin transform: `Γ*Γ = 1` away from the end, and stability
//! of the commutator and quantization defects under refinement.

use std::sync::OnceLock;

use conelab_cone::{
    cone_quantize, pseudo_guillemin, ConeAction, ConeGeometry, CutoffSystem, ToeplitzProjection,
};
use conelab_index::commutator_hs_norm;
use conelab_linop::faer::Mat;
use conelab_linop::{c64, norm_fro, Action, LinearOperator};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{err, Cell, CellResult};
use crate::config::{NamedSymbol, Suite, ValidatedConfig};
use crate::report::{Row, Truncation};

/// Bound on `‖(Γ*Γ − 1)φ‖` for unit `φ` supported in `{t > support_t}`.
pub const GRAM_TOL: f64 = 1e-8;
/// Largest relative change of `‖[P, a]‖₂` under doubling.
pub const COMMUTATOR_CHANGE: f64 = 0.01;
/// Largest relative change of `‖Γ*aΓ − τ(a)‖₂` under doubling.
pub const QUANTIZATION_CHANGE: f64 = 0.02;
/// Norms below this are compared absolutely.
pub const CHANGE_FLOOR: f64 = 1e-6;

const S: Suite = Suite::Theorem1;

/// `|x₂ − x₁| / max(x₁, CHANGE_FLOOR)`.
pub fn relative_change(x1: f64, x2: f64) -> f64 {
    (x2 - x1).abs() / x1.max(CHANGE_FLOOR)
}

pub struct GeometryContext {
    pub geometry: ConeGeometry,
    pub cutoffs: CutoffSystem,
    pub gamma: LinearOperator,
    pub projection: ToeplitzProjection,
}

impl GeometryContext {
    pub fn new(geometry: ConeGeometry) -> Result<Self, String> {
        let cutoffs = CutoffSystem::standard(&geometry);
        let gamma = pseudo_guillemin(&geometry, &cutoffs).map_err(err)?;
        let projection = ToeplitzProjection::new(gamma.clone()).map_err(err)?;
        Ok(Self {
            geometry,
            cutoffs,
            gamma,
            projection,
        })
    }

    /// `‖[P, a]‖₂` and `‖Γ*aΓ − τ_Ψ(a)‖₂`.
    pub fn defects(&self, symbol: &conelab_cone::ConeSymbol) -> Result<(f64, f64), String> {
        let act = ConeAction::new(symbol, &self.geometry);
        let hs = commutator_hs_norm(self.projection.basis().as_ref(), &act);
        let g = self.gamma.mat();
        let ag = act.apply(g);
        let mut gag = g.adjoint() * &ag;
        drop(ag);
        let tau = cone_quantize(symbol, &self.geometry, &self.cutoffs).map_err(err)?;
        gag -= tau.mat();
        Ok((hs, norm_fro(gag.as_ref())))
    }
}

/// Lazily built geometries, shared by the cells of the suite.
pub struct Context {
    base: ConeGeometry,
    coarse: OnceLock<Result<GeometryContext, String>>,
    fine: OnceLock<Result<GeometryContext, String>>,
}

impl Context {
    pub fn new(base: ConeGeometry) -> Self {
        Self {
            base,
            coarse: OnceLock::new(),
            fine: OnceLock::new(),
        }
    }

    pub fn coarse(&self) -> Result<&GeometryContext, String> {
        self.coarse
            .get_or_init(|| GeometryContext::new(self.base.clone()))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn fine(&self) -> Result<&GeometryContext, String> {
        self.fine
            .get_or_init(|| {
                let g = self.base.refined().map_err(err)?;
                GeometryContext::new(g)
            })
            .as_ref()
            .map_err(Clone::clone)
    }
}

/// Largest `‖(Γ*Γ − 1)φ‖` over `samples` unit vectors supported in `{t > support_t}`.
pub fn gram_defect(ctx: &GeometryContext, seed: u64, samples: usize, support_t: f64) -> f64 {
    let geo = &ctx.geometry;
    let support: Vec<usize> = (0..geo.manifold_dim())
        .filter(|&p| geo.manifold_t(p) > support_t)
        .collect();
    let dim = geo.manifold_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut phi = Mat::<c64>::zeros(dim, samples);
    for j in 0..samples {
        let mut norm2 = 0.0;
        for &p in &support {
            let z = c64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            norm2 += z.norm_sqr();
            phi[(p, j)] = z;
        }
        let s = 1.0 / norm2.sqrt().max(f64::MIN_POSITIVE);
        for &p in &support {
            phi[(p, j)] *= s;
        }
    }
    let g = ctx.gamma.mat();
    let gphi = g * &phi;
    let ggphi = g.adjoint() * &gphi;
    let diff = ggphi - &phi;
    (0..samples)
        .map(|j| diff.col(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .fold(0.0, f64::max)
}

fn gram_cell(ctx: &Context, seed: u64, samples: usize, support_t: f64) -> CellResult {
    let c = ctx.coarse()?;
    let v = gram_defect(c, seed, samples, support_t);
    Ok(vec![Row::bound(
        S,
        "gram_identity_on_support",
        format!("phi:seed={seed}"),
        Truncation::cone(&c.geometry),
        v,
        GRAM_TOL,
    )])
}

fn symbol_cell(ctx: &Context, s: &NamedSymbol) -> CellResult {
    let c = ctx.coarse()?;
    let (hs1, q1) = c.defects(&s.symbol)?;
    let f = ctx.fine()?;
    let (hs2, q2) = f.defects(&s.symbol)?;
    let (tc, tf) = (Truncation::cone(&c.geometry), Truncation::cone(&f.geometry));
    let td = Truncation::doubling(&c.geometry, &f.geometry);
    let name = s.name.as_str();
    Ok(vec![
        Row::info(S, "commutator_hs", name, tc.clone(), hs1),
        Row::info(S, "commutator_hs", name, tf.clone(), hs2),
        Row::bound(
            S,
            "commutator_hs_change",
            name,
            td.clone(),
            relative_change(hs1, hs2),
            COMMUTATOR_CHANGE,
        ),
        Row::info(S, "quantization_defect", name, tc, q1),
        Row::info(S, "quantization_defect", name, tf, q2),
        Row::bound(
            S,
            "quantization_defect_change",
            name,
            td,
            relative_change(q1, q2),
            QUANTIZATION_CHANGE,
        ),
    ])
}

pub fn cells<'a>(cfg: &'a ValidatedConfig, ctx: &'a Context) -> Vec<Cell<'a>> {
    let t1 = &cfg.config.theorem1;
    let n = cfg.geometry.n();
    let mut out = Vec::new();
    for &seed in &cfg.config.seeds {
        let (samples, support) = (t1.samples, t1.support_t);
        out.push(Cell::new(
            format!("theorem1/gram/seed={seed}/N={n}"),
            move || gram_cell(ctx, seed, samples, support),
        ));
    }
    for s in &cfg.battery {
        out.push(Cell::new(format!("theorem1/{}/N={n}", s.name), move || {
            symbol_cell(ctx, s)
        }));
    }
    out
}
