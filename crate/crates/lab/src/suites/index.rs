//! Cone index through the character against the winding oracle, along
//! elliptic paths and for products.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use conelab_circle::{CircleFunction, CircleSymbol, TrigPolynomial};
use conelab_cone::{ConeGeometry, ConeSymbol};
use conelab_index::{cone_index_oracle, ConeIndexer, IndexReport};
use conelab_linop::c64;

use super::{err, Cell, CellResult};
use crate::config::{NamedSymbol, Suite, ValidatedConfig};
use crate::report::{Row, Truncation, Verdict};

/// `c` in the path factor `1 + t·c·(e^{2iθ} − 1)`; below `1/2` the factor
/// never vanishes and has winding zero.
pub const PATH_AMPLITUDE: f64 = 0.4;

const S: Suite = Suite::Index;

/// Interior factor `1 + t·c·(e^{2iθ} − 1)` on both sheets. It equals `1` at
/// `θ = 0`, so multiplying by it keeps the matching condition.
pub fn path_factor(t: f64) -> ConeSymbol {
    let c = PATH_AMPLITUDE * t;
    let f: CircleFunction =
        TrigPolynomial::new([(0, c64::new(1.0 - c, 0.0)), (2, c64::new(c, 0.0))]).into();
    ConeSymbol::interior_only(CircleSymbol::new(f.clone(), f)).expect("factor matches")
}

/// Indexer built on first use, and indices already computed by name.
pub struct Context {
    geometry: ConeGeometry,
    order: usize,
    indexer: OnceLock<Result<ConeIndexer, String>>,
    cache: Mutex<HashMap<String, IndexReport>>,
}

impl Context {
    pub fn new(geometry: ConeGeometry, order: usize) -> Self {
        Self {
            geometry,
            order,
            indexer: OnceLock::new(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn indexer(&self) -> Result<&ConeIndexer, String> {
        self.indexer
            .get_or_init(|| ConeIndexer::new(self.geometry.clone()).map_err(err))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn index(&self, a: &ConeSymbol) -> Result<IndexReport, String> {
        self.indexer()?.index(a, self.order).map_err(err)
    }

    /// Index of a battery symbol, computed once.
    pub fn named(&self, s: &NamedSymbol) -> Result<IndexReport, String> {
        if let Some(r) = self.cache.lock().expect("cache lock").get(&s.name) {
            return Ok(r.clone());
        }
        let r = self.index(&s.symbol)?;
        self.cache
            .lock()
            .expect("cache lock")
            .insert(s.name.clone(), r.clone());
        Ok(r)
    }

    fn truncation(&self) -> Truncation {
        Truncation::cone(&self.geometry)
    }
}

fn symbol_cell(ctx: &Context, s: &NamedSymbol) -> CellResult {
    let r = ctx.named(s)?;
    let oracle = cone_index_oracle(&s.symbol).map_err(err)?;
    Ok(vec![Row::new(
        S,
        "index",
        s.name.as_str(),
        ctx.truncation(),
        r.rounded as f64,
        Some(oracle as f64),
        Verdict::equal(r.rounded, oracle, r.is_conclusive()),
    )])
}

fn path_cell(ctx: &Context, s: &NamedSymbol, steps: usize) -> CellResult {
    let base = ctx.named(s)?;
    let mut rows = Vec::with_capacity(steps - 1);
    for k in 1..steps {
        let t = k as f64 / (steps - 1) as f64;
        let r = ctx.index(&s.symbol.mul(&path_factor(t)))?;
        rows.push(Row::new(
            S,
            format!("path_constant[{k}/{}]", steps - 1),
            s.name.as_str(),
            ctx.truncation(),
            r.rounded as f64,
            Some(base.rounded as f64),
            Verdict::equal(
                r.rounded,
                base.rounded,
                r.is_conclusive() && base.is_conclusive(),
            ),
        ));
    }
    Ok(rows)
}

fn product_cell(ctx: &Context, a: &NamedSymbol, b: &NamedSymbol) -> CellResult {
    let ra = ctx.named(a)?;
    let rb = ctx.named(b)?;
    let r = ctx.index(&a.symbol.mul(&b.symbol))?;
    let expected = ra.rounded + rb.rounded;
    let conclusive = r.is_conclusive() && ra.is_conclusive() && rb.is_conclusive();
    Ok(vec![Row::new(
        S,
        "product_additive",
        format!("{}*{}", a.name, b.name),
        ctx.truncation(),
        r.rounded as f64,
        Some(expected as f64),
        Verdict::equal(r.rounded, expected, conclusive),
    )])
}

pub fn cells<'a>(cfg: &'a ValidatedConfig, ctx: &'a Context) -> Vec<Cell<'a>> {
    let n = cfg.geometry.n();
    let ix = &cfg.config.index;
    let mut out = Vec::new();
    for s in &cfg.battery {
        out.push(Cell::new(format!("index/{}/N={n}", s.name), move || {
            symbol_cell(ctx, s)
        }));
    }
    for name in &ix.paths {
        let s = cfg.symbol(name).expect("validated path name");
        let steps = ix.path_steps;
        out.push(Cell::new(format!("index/path:{name}/N={n}"), move || {
            path_cell(ctx, s, steps)
        }));
    }
    for [a, b] in &ix.products {
        let sa = cfg.symbol(a).expect("validated product name");
        let sb = cfg.symbol(b).expect("validated product name");
        out.push(Cell::new(format!("index/{a}*{b}/N={n}"), move || {
            product_cell(ctx, sa, sb)
        }));
    }
    out
}
