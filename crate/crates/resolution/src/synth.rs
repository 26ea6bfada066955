use conelab_circle::CircleTruncation;
use conelab_linop::faer::Mat;
use conelab_linop::{c64, Projection, PROJECTION_TOL};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bounded::BoundedResolution;
use crate::error::{ResolutionError, Result};
use crate::module::HilbertModule;

/// Condition number bound of the positive factors.
pub const MAX_CONDITION: f64 = 10.0;

/// A constant exact complex `ℂ^{d₀} → ⋯ → ℂ^{d_n}` with `dim ker X₀ = r₀`.
#[derive(Debug, Clone)]
pub struct ConstantComplex {
    pub maps: Vec<Mat<c64>>,
    /// Orthogonal projection onto `ker X₀`.
    pub kernel: Mat<c64>,
    /// `r_j = dim im X_{j−1}`, with `r₀ = dim ker X₀`.
    pub ranks: Vec<usize>,
}

fn gaussian(rng: &mut ChaCha8Rng, r: usize, c: usize) -> Mat<c64> {
    Mat::from_fn(r, c, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c64::new(re, im)
    })
}

/// Haar-distributed unitary from the QR factorization of a Gaussian matrix.
fn random_unitary(rng: &mut ChaCha8Rng, d: usize) -> Mat<c64> {
    if d == 0 {
        return Mat::zeros(0, 0);
    }
    let g = gaussian(rng, d, d);
    let qr = g.qr();
    let q = qr.compute_Q();
    let r = qr.R();
    Mat::from_fn(d, d, |i, j| {
        let z = r[(j, j)];
        let ph = if z.norm() > 0.0 {
            z / z.norm()
        } else {
            c64::new(1.0, 0.0)
        };
        q[(i, j)] * ph
    })
}

/// Positive definite matrix with spectrum in `[1, MAX_CONDITION]`.
fn positive_factor(rng: &mut ChaCha8Rng, r: usize) -> Mat<c64> {
    let u = random_unitary(rng, r);
    let ev: Vec<f64> = (0..r)
        .map(|_| rng.random_range(1.0..MAX_CONDITION))
        .collect();
    Mat::from_fn(r, r, |i, j| {
        (0..r)
            .map(|k| u[(i, k)] * ev[k] * u[(j, k)].conj())
            .sum::<c64>()
    })
}

/// Ranks `r₀, …, r_n` for a given `r₀`, if exactness is feasible.
pub fn rank_chain(dims: &[usize], r0: usize) -> Option<Vec<usize>> {
    let mut ranks = vec![r0];
    if r0 > dims[0] {
        return None;
    }
    for j in 0..dims.len() - 1 {
        let next = dims[j].checked_sub(ranks[j])?;
        if next > dims[j + 1] {
            return None;
        }
        ranks.push(next);
    }
    Some(ranks)
}

/// Random exact constant complex; maps are partial isometries composed with
/// positive factors of condition number at most `MAX_CONDITION`.
pub fn constant_complex(
    rng: &mut ChaCha8Rng,
    dims: &[usize],
    r0: usize,
) -> Result<ConstantComplex> {
    let ranks = rank_chain(dims, r0).ok_or_else(|| {
        ResolutionError::InfeasibleRanks(format!("dims {dims:?} with dim ker X₀ = {r0}"))
    })?;
    let bases: Vec<Mat<c64>> = dims.iter().map(|&d| random_unitary(rng, d)).collect();
    let mut maps = Vec::new();
    for j in 0..dims.len() - 1 {
        // X_j vanishes on R_j = span of the first r_j columns of the basis of
        // H_j and maps its complement onto R_{j+1}.
        let (rj, rj1) = (ranks[j], ranks[j + 1]);
        let src = bases[j].subcols(rj, dims[j] - rj);
        let dst = bases[j + 1].subcols(0, rj1);
        let s = positive_factor(rng, rj1);
        maps.push(dst * &s * src.adjoint());
    }
    let k = bases[0].subcols(0, r0);
    let kernel = k * k.adjoint();
    Ok(ConstantComplex {
        maps,
        kernel,
        ranks,
    })
}

/// Feasible values of `dim ker X₀`.
pub fn feasible_kernels(dims: &[usize]) -> Vec<usize> {
    (0..=dims[0])
        .filter(|&r| rank_chain(dims, r).is_some())
        .collect()
}

/// Deterministic random resolution on `L²(S¹) ⊗ ℂ^{d_j}`: independent constant
/// complexes on the modes `m ≥ 0` and `m < 0`, so the maps commute with the
/// action up to the finite-rank commutator of the Hardy projection.
pub fn synth_resolution(
    seed: u64,
    dims: &[usize],
    truncation: &CircleTruncation,
) -> Result<BoundedResolution> {
    synth_with_weight(seed, dims, truncation, |_| 1.0)
}

pub(crate) fn synth_parts(seed: u64, dims: &[usize]) -> Result<(ConstantComplex, ConstantComplex)> {
    if dims.is_empty() {
        return Err(ResolutionError::InfeasibleRanks("no spaces".to_string()));
    }
    let feasible = feasible_kernels(dims);
    if feasible.is_empty() {
        return Err(ResolutionError::InfeasibleRanks(format!(
            "no exact complex has dims {dims:?}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rp = feasible[rng.random_range(0..feasible.len())];
    let rm = feasible[rng.random_range(0..feasible.len())];
    let plus = constant_complex(&mut rng, dims, rp)?;
    let minus = constant_complex(&mut rng, dims, rm)?;
    Ok((plus, minus))
}

pub(crate) fn synth_modules(dims: &[usize], truncation: &CircleTruncation) -> Vec<HilbertModule> {
    dims.iter()
        .enumerate()
        .map(|(j, &d)| HilbertModule::new(&format!("H{j}"), truncation, d))
        .collect()
}

pub(crate) fn synth_with_weight(
    seed: u64,
    dims: &[usize],
    truncation: &CircleTruncation,
    weight: impl Fn(i64) -> f64 + Copy,
) -> Result<BoundedResolution> {
    let (plus, minus) = synth_parts(seed, dims)?;
    let modules = synth_modules(dims, truncation);
    let maps = (0..dims.len() - 1)
        .map(|j| {
            modules[j].mode_map(
                &modules[j + 1],
                plus.maps[j].as_ref(),
                minus.maps[j].as_ref(),
                weight,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let p = modules[0].mode_map(
        &modules[0],
        plus.kernel.as_ref(),
        minus.kernel.as_ref(),
        |_| 1.0,
    )?;
    let p = Projection::new(p, PROJECTION_TOL)?;
    BoundedResolution::new(p, modules, maps)
}

/// Index of the Toeplitz operator of `e^{iθ}` on the synthetic `P`, from the
/// kernel dimensions of the two constant complexes.
pub fn synth_shift_index(seed: u64, dims: &[usize]) -> Result<i64> {
    let (plus, minus) = synth_parts(seed, dims)?;
    Ok(minus.ranks[0] as i64 - plus.ranks[0] as i64)
}
