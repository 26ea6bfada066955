use conelab_circle::CircleTruncation;
use conelab_linop::faer::Mat;
use conelab_linop::{
    c64, fredholm_defect, hermitian_eig, kernel_projection, positive_spectral_projection,
    range_projection, LinearOperator, Projection, SpaceTag, RANK_TOL,
};
use std::sync::Arc;

use crate::error::{ResolutionError, Result};
use crate::module::{direct_sum_space, offsets, HilbertModule};

/// Tolerance for `A_{j+1}A_j = 0`, relative to the product of norms.
pub const COMPLEX_TOL: f64 = 1e-9;
/// Projections compared against each other must agree to this Frobenius distance.
pub const PROJECTION_MATCH_TOL: f64 = 1e-8;

/// Rank data certifying a resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolutionCertificate {
    /// Rank of each map `A_j`.
    pub ranks: Vec<usize>,
    /// Smallest rank gap across all decisions.
    pub min_gap: f64,
    /// Largest `‖A_{j+1}A_j‖` relative to `‖A_{j+1}‖‖A_j‖`.
    pub complex_defect: f64,
    /// `‖Π_{ker A₀} − P‖`.
    pub kernel_defect: f64,
}

/// An exact sequence `0 → im P → H₀ → H₁ → ⋯ → H_n` of modules.
#[derive(Debug, Clone)]
pub struct BoundedResolution {
    p: Projection,
    modules: Vec<HilbertModule>,
    maps: Vec<LinearOperator>,
    certificate: ResolutionCertificate,
}

pub(crate) fn relative_product_defect(a: &LinearOperator, b: &LinearOperator) -> f64 {
    let prod = b.mat() * a.mat();
    let scale = (a.norm_fro() * b.norm_fro()).max(1e-300);
    conelab_linop::norm_fro(prod.as_ref()) / scale
}

pub(crate) fn check_complex(maps: &[LinearOperator]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for j in 0..maps.len().saturating_sub(1) {
        let d = relative_product_defect(&maps[j], &maps[j + 1]);
        if d > COMPLEX_TOL {
            return Err(ResolutionError::NotAComplex {
                index: j,
                next: j + 1,
                defect: d,
            });
        }
        worst = worst.max(d);
    }
    Ok(worst)
}

pub(crate) fn check_chain(modules: &[HilbertModule], maps: &[LinearOperator]) -> Result<()> {
    if modules.len() != maps.len() + 1 {
        return Err(ResolutionError::Invalid(format!(
            "{} spaces need {} maps, found {}",
            modules.len(),
            modules.len().saturating_sub(1),
            maps.len()
        )));
    }
    for (j, a) in maps.iter().enumerate() {
        if a.domain() != modules[j].space() || a.codomain() != modules[j + 1].space() {
            return Err(ResolutionError::Invalid(format!(
                "map A_{j} does not act from H_{j} to H_{}",
                j + 1
            )));
        }
    }
    Ok(())
}

/// Distance between two projections on the same space.
pub fn projection_distance(a: &Projection, b: &Projection) -> f64 {
    conelab_linop::norm_fro((a.mat() - b.mat()).as_ref())
}

impl BoundedResolution {
    /// Validates exactness with rank decisions.
    pub fn new(
        p: Projection,
        modules: Vec<HilbertModule>,
        maps: Vec<LinearOperator>,
    ) -> Result<Self> {
        check_chain(&modules, &maps)?;
        if p.space() != modules[0].space() {
            return Err(ResolutionError::Invalid("P does not act on H₀".to_string()));
        }
        let complex_defect = check_complex(&maps)?;
        let mut ranks = Vec::with_capacity(maps.len());
        let mut min_gap = f64::INFINITY;
        for a in &maps {
            let d = fredholm_defect(a, RANK_TOL)?;
            min_gap = min_gap.min(d.gap);
            ranks.push(d.rank);
        }
        let p_rank = p.rank();
        let kernel_defect = match maps.first() {
            Some(a0) => {
                let k = kernel_projection(a0, RANK_TOL)?;
                let defect = projection_distance(&k, &p);
                if defect > PROJECTION_MATCH_TOL {
                    return Err(ResolutionError::NotExact {
                        position: 0,
                        kernel: modules[0].dim() - ranks[0],
                        image: p_rank,
                    });
                }
                defect
            }
            None => 0.0,
        };
        for j in 1..maps.len() {
            let kernel = modules[j].dim() - ranks[j];
            if kernel != ranks[j - 1] {
                return Err(ResolutionError::NotExact {
                    position: j,
                    kernel,
                    image: ranks[j - 1],
                });
            }
        }
        Ok(Self {
            p,
            modules,
            maps,
            certificate: ResolutionCertificate {
                ranks,
                min_gap,
                complex_defect,
                kernel_defect,
            },
        })
    }

    /// Length-0 resolution `0 → im P → H₀`.
    pub fn trivial(p: Projection, module: HilbertModule) -> Result<Self> {
        Self::new(p, vec![module], Vec::new())
    }

    /// Hardy resolution of `P₊` of length `n`: `A_j = P₋` for even `j`, `P₊` for odd `j`.
    pub fn hardy(truncation: &CircleTruncation, n: usize) -> Result<Self> {
        let modules: Vec<HilbertModule> = (0..=n)
            .map(|j| HilbertModule::new(&format!("H{j}"), truncation, 1))
            .collect();
        let maps = hardy_maps(&modules, |_| 1.0)?;
        let p = Projection::new(modules[0].hardy_plus(), conelab_linop::PROJECTION_TOL)?;
        Self::new(p, modules, maps)
    }

    pub fn projection(&self) -> &Projection {
        &self.p
    }

    pub fn modules(&self) -> &[HilbertModule] {
        &self.modules
    }

    pub fn maps(&self) -> &[LinearOperator] {
        &self.maps
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn certificate(&self) -> &ResolutionCertificate {
        &self.certificate
    }

    /// The resolution broken at `H_k`.
    pub fn truncate(&self, k: usize) -> Result<Self> {
        if k > self.length() {
            return Err(ResolutionError::Invalid(format!(
                "cannot break a resolution of length {} at H_{k}",
                self.length()
            )));
        }
        Self::new(
            self.p.clone(),
            self.modules[..=k].to_vec(),
            self.maps[..k].to_vec(),
        )
    }

    /// `‖[a, A_j]‖` in operator norm for each map.
    pub fn commutator_norms(&self, f: &conelab_circle::CircleFunction) -> Result<Vec<f64>> {
        commutator_norms(&self.modules, &self.maps, f)
    }
}

pub(crate) fn commutator_norms(
    modules: &[HilbertModule],
    maps: &[LinearOperator],
    f: &conelab_circle::CircleFunction,
) -> Result<Vec<f64>> {
    maps.iter()
        .enumerate()
        .map(|(j, a)| {
            let left = modules[j + 1].act(f).compose(a)?;
            let right = a.compose(&modules[j].act(f))?;
            let c = left.sub(&right)?;
            let s = conelab_linop::singular_values(&c)?;
            Ok(s.first().copied().unwrap_or(0.0))
        })
        .collect()
}

pub(crate) fn hardy_maps(
    modules: &[HilbertModule],
    weight: impl Fn(i64) -> f64 + Copy,
) -> Result<Vec<LinearOperator>> {
    let one = Mat::<c64>::identity(1, 1);
    let zero = Mat::<c64>::zeros(1, 1);
    (0..modules.len() - 1)
        .map(|j| {
            let (plus, minus) = if j % 2 == 0 {
                (&zero, &one)
            } else {
                (&one, &zero)
            };
            modules[j].mode_map(&modules[j + 1], plus.as_ref(), minus.as_ref(), weight)
        })
        .collect()
}

/// Projection onto `(im A_{n−1})^⊥` in `H_n`; `1 − P` for length 0.
pub fn dual_projection(res: &BoundedResolution) -> Result<Projection> {
    match res.maps.last() {
        Some(a) => Ok(range_projection(a, RANK_TOL)?.complement()),
        None => Ok(res.p.complement()),
    }
}

/// `D = A + A* + P + (−1)^{n+1}P̃` on `⊕ H_j`.
#[derive(Debug, Clone)]
pub struct RollUp {
    pub d: LinearOperator,
    pub p0: Projection,
    pub pn: Projection,
    pub sign: f64,
    pub space: Arc<SpaceTag>,
    /// Smallest `|λ|` over the spectrum of `D`.
    pub min_modulus: f64,
}

/// Smallest admissible `|λ|` for an invertible roll-up, relative to `max(1, ‖D‖)`.
pub const INVERTIBILITY_TOL: f64 = 1e-8;

pub(crate) fn assemble_roll_up(
    modules: &[HilbertModule],
    maps: &[LinearOperator],
    p0: &Projection,
    pn: &Projection,
) -> Result<RollUp> {
    let n = maps.len();
    let space = direct_sum_space(modules);
    let off = offsets(modules);
    let total = space.dim();
    let mut d = Mat::<c64>::zeros(total, total);
    for (j, a) in maps.iter().enumerate() {
        let (r, c) = (modules[j + 1].dim(), modules[j].dim());
        d.as_mut()
            .submatrix_mut(off[j + 1], off[j], r, c)
            .copy_from(a.mat());
        d.as_mut()
            .submatrix_mut(off[j], off[j + 1], c, r)
            .copy_from(a.mat().adjoint());
    }
    let sign = if (n + 1) % 2 == 0 { 1.0 } else { -1.0 };
    let d0 = modules[0].dim();
    let dn = modules[n].dim();
    for i in 0..d0 {
        for k in 0..d0 {
            d[(off[0] + i, off[0] + k)] += p0.mat()[(i, k)];
        }
    }
    for i in 0..dn {
        for k in 0..dn {
            d[(off[n] + i, off[n] + k)] += pn.mat()[(i, k)] * sign;
        }
    }
    let d = LinearOperator::on(space.clone(), hermitian_average(&d))?;
    let e = hermitian_eig(&d)?;
    let min_modulus = e.values.iter().fold(f64::INFINITY, |m, l| m.min(l.abs()));
    let scale = e.values.iter().fold(1.0f64, |m, l| m.max(l.abs()));
    if total > 0 && min_modulus < INVERTIBILITY_TOL * scale {
        return Err(ResolutionError::NotInvertible { min_modulus });
    }
    Ok(RollUp {
        d,
        p0: p0.clone(),
        pn: pn.clone(),
        sign,
        space,
        min_modulus,
    })
}

pub(crate) fn hermitian_average(m: &Mat<c64>) -> Mat<c64> {
    let n = m.nrows();
    Mat::from_fn(n, n, |i, j| {
        if i == j {
            c64::new(m[(i, i)].re, 0.0)
        } else {
            (m[(i, j)] + m[(j, i)].conj()) * 0.5
        }
    })
}

/// Rolls the resolution up into the self-adjoint invertible operator `D`.
pub fn roll_up(res: &BoundedResolution) -> Result<RollUp> {
    let pn = dual_projection(res)?;
    assemble_roll_up(&res.modules, &res.maps, &res.p, &pn)
}

impl RollUp {
    /// `P₊(D)`; the spectrum is bounded away from zero by `min_modulus`.
    pub fn positive_projection(&self) -> Result<Projection> {
        Ok(positive_spectral_projection(
            &self.d,
            self.min_modulus / 8.0,
        )?)
    }

    /// `‖D − D*‖`, zero by construction.
    pub fn hermiticity_defect(&self) -> f64 {
        let m = self.d.mat();
        conelab_linop::norm_fro((m - m.adjoint()).as_ref())
    }
}
