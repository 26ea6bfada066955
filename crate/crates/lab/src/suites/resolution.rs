//! Index through the projection against index through the roll-up.

use conelab_circle::CircleTruncation;
use conelab_resolution::{
    bounded_normalization, circle_battery, equivalence_test, feasible_kernels, synth_resolution,
    synth_shift_index, BoundedResolution, UnboundedResolution,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{err, Cell, CellResult};
use crate::config::{Suite, ValidatedConfig};
use crate::descriptor::{MapDescriptor, SyntheticDims};
use crate::report::{Row, Truncation, Verdict};

/// Smallest admissible share of conclusive cells.
pub const MIN_CONCLUSIVE: f64 = 0.95;
/// Largest multiplicity drawn by `synthetic:auto`.
pub const AUTO_MAX_MULTIPLICITY: usize = 4;

const S: Suite = Suite::Resolution;

/// Chain shape drawn from a seed: length `seed mod 4`, multiplicities in
/// `1..=4`, redrawn until an exact complex exists.
pub fn auto_dims(seed: u64) -> Vec<usize> {
    let len = (seed % 4) as usize + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_d1a5);
    loop {
        let dims: Vec<usize> = (0..len)
            .map(|_| rng.random_range(1..=AUTO_MAX_MULTIPLICITY))
            .collect();
        if !feasible_kernels(&dims).is_empty() {
            return dims;
        }
    }
}

/// One concrete resolution requested by a config.
#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Hardy(usize),
    Synthetic {
        seed: u64,
        dims: Vec<usize>,
    },
    /// `f(m)` for `m = −N..=N`.
    Diagonal(Vec<f64>),
}

impl Instance {
    pub fn length(&self) -> usize {
        match self {
            Instance::Hardy(n) => *n,
            Instance::Synthetic { dims, .. } => dims.len() - 1,
            Instance::Diagonal(_) => 1,
        }
    }

    fn weight(w: &[f64]) -> impl Fn(i64) -> f64 + '_ {
        let n = (w.len() / 2) as i64;
        move |m| w[(m + n) as usize]
    }

    pub fn bounded(&self, tr: &CircleTruncation) -> Result<BoundedResolution, String> {
        match self {
            Instance::Hardy(n) => BoundedResolution::hardy(tr, *n).map_err(err),
            Instance::Synthetic { seed, dims } => synth_resolution(*seed, dims, tr).map_err(err),
            Instance::Diagonal(_) => bounded_normalization(&self.unbounded(tr)?).map_err(err),
        }
    }

    pub fn unbounded(&self, tr: &CircleTruncation) -> Result<UnboundedResolution, String> {
        match self {
            Instance::Hardy(n) => UnboundedResolution::hardy(tr, *n).map_err(err),
            Instance::Synthetic { seed, dims } => {
                UnboundedResolution::synthetic(*seed, dims, tr).map_err(err)
            }
            Instance::Diagonal(w) => {
                UnboundedResolution::diagonal(tr, Self::weight(w)).map_err(err)
            }
        }
    }
}

/// Named instances of every map descriptor; synthetic ones expand over the seeds.
pub fn instances(
    cfg: &ValidatedConfig,
    truncation: usize,
) -> Result<Vec<(String, Instance)>, String> {
    let mut out = Vec::new();
    for m in &cfg.maps {
        match &m.map {
            MapDescriptor::Hardy(n) => out.push((m.name.clone(), Instance::Hardy(*n))),
            MapDescriptor::Synthetic(d) => {
                for &seed in &cfg.config.seeds {
                    let dims = match d {
                        SyntheticDims::Auto => auto_dims(seed),
                        SyntheticDims::Fixed(v) => v.clone(),
                    };
                    out.push((
                        format!("{}#{seed}", m.name),
                        Instance::Synthetic { seed, dims },
                    ));
                }
            }
            MapDescriptor::Diagonal(d) => out.push((
                m.name.clone(),
                Instance::Diagonal(d.weights(truncation).map_err(err)?),
            )),
        }
    }
    Ok(out)
}

fn instance_cell(name: &str, inst: &Instance, n: usize) -> CellResult {
    let tr = CircleTruncation::new(n);
    let res = inst.bounded(&tr)?;
    let rows = equivalence_test(&res, &circle_battery()).map_err(err)?;
    let trunc = Truncation::circle(n);
    let mut out = Vec::new();
    for r in &rows {
        out.push(Row::new(
            S,
            format!("roll_up_agrees@{name}"),
            r.symbol.as_str(),
            trunc.clone(),
            r.via_roll_up.rounded as f64,
            Some(r.via_projection.rounded as f64),
            Verdict::equal(
                r.via_roll_up.rounded,
                r.via_projection.rounded,
                r.conclusive(),
            ),
        ));
    }
    if let Instance::Synthetic { seed, dims } = inst {
        let oracle = synth_shift_index(*seed, dims).map_err(err)?;
        if let Some(r) = rows.iter().find(|r| r.symbol == "shift") {
            out.push(Row::new(
                S,
                format!("shift_rank_oracle@{name}"),
                "shift",
                trunc,
                r.via_projection.rounded as f64,
                Some(oracle as f64),
                Verdict::equal(
                    r.via_projection.rounded,
                    oracle,
                    r.via_projection.is_conclusive(),
                ),
            ));
        }
    }
    Ok(out)
}

pub fn cells(cfg: &ValidatedConfig) -> Result<Vec<Cell<'_>>, String> {
    let n = cfg.config.resolution.truncation;
    Ok(instances(cfg, n)?
        .into_iter()
        .map(|(name, inst)| {
            Cell::new(format!("resolution/{name}/N={n}"), move || {
                instance_cell(&name, &inst, n)
            })
        })
        .collect())
}

/// Share of conclusive equivalence cells, appended after the cells ran.
pub fn finish(cfg: &ValidatedConfig, rows: &mut Vec<Row>) {
    let cells: Vec<&Row> = rows
        .iter()
        .filter(|r| r.assertion.starts_with("roll_up_agrees@"))
        .collect();
    if cells.is_empty() {
        return;
    }
    let conclusive = cells
        .iter()
        .filter(|r| r.verdict != Verdict::Inconclusive)
        .count();
    let share = conclusive as f64 / cells.len() as f64;
    let verdict = if share >= MIN_CONCLUSIVE {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    rows.push(Row::new(
        S,
        "conclusive_share",
        "-",
        Truncation::circle(cfg.config.resolution.truncation),
        share,
        Some(MIN_CONCLUSIVE),
        verdict,
    ));
}
