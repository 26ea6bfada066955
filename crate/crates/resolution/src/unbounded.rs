use conelab_circle::{CircleFunction, CircleTruncation};
use conelab_linop::faer::Mat;
use conelab_linop::{
    c64, fredholm_defect, hermitian_eig, kernel_projection, norm_fro, range_projection,
    spectral_function, LinearOperator, Projection, RANK_TOL,
};

use crate::bounded::{
    assemble_roll_up, check_chain, check_complex, commutator_norms, hardy_maps,
    projection_distance, BoundedResolution, RollUp,
};
use crate::error::{ResolutionError, Result};
use crate::module::{direct_sum_space, offsets, HilbertModule};
use crate::synth::{synth_modules, synth_parts};

/// A complex `0 → H₀ → ⋯ → H_n → 0` of large-normed maps standing for closed
/// operators, exact except at the ends.
#[derive(Debug, Clone)]
pub struct UnboundedResolution {
    modules: Vec<HilbertModule>,
    maps: Vec<LinearOperator>,
    complex_defect: f64,
}

impl UnboundedResolution {
    pub fn new(modules: Vec<HilbertModule>, maps: Vec<LinearOperator>) -> Result<Self> {
        check_chain(&modules, &maps)?;
        if maps.is_empty() {
            return Err(ResolutionError::Invalid(
                "an unbounded resolution needs at least one map".to_string(),
            ));
        }
        let complex_defect = check_complex(&maps)?;
        let res = Self {
            modules,
            maps,
            complex_defect,
        };
        let ranks = res.middle_cohomology()?;
        if let Some(j) = ranks.iter().position(|&r| r != 0) {
            return Err(ResolutionError::NotExact {
                position: j + 1,
                kernel: ranks[j],
                image: 0,
            });
        }
        Ok(res)
    }

    /// `A_j = (1 + |m|)·P₋` for even `j` and `(1 + |m|)·P₊` for odd `j`;
    /// at length 1 the map is `A₀ = diag(m)·P₋`.
    pub fn hardy(truncation: &CircleTruncation, n: usize) -> Result<Self> {
        let modules: Vec<HilbertModule> = (0..=n)
            .map(|j| HilbertModule::new(&format!("H{j}"), truncation, 1))
            .collect();
        let maps = if n == 1 {
            hardy_maps(&modules, |m| m as f64)?
        } else {
            hardy_maps(&modules, |m| 1.0 + m.unsigned_abs() as f64)?
        };
        Self::new(modules, maps)
    }

    /// Length-1 diagonal model `A₀ = diag(f(m))` on a single copy of the circle.
    pub fn diagonal(truncation: &CircleTruncation, f: impl Fn(i64) -> f64) -> Result<Self> {
        let modules: Vec<HilbertModule> = (0..=1)
            .map(|j| HilbertModule::new(&format!("H{j}"), truncation, 1))
            .collect();
        let one = Mat::<c64>::identity(1, 1);
        let a = modules[0].mode_map(&modules[1], one.as_ref(), one.as_ref(), f)?;
        Self::new(modules, vec![a])
    }

    /// Synthetic resolution with maps multiplied by `1 + |m|`.
    pub fn synthetic(seed: u64, dims: &[usize], truncation: &CircleTruncation) -> Result<Self> {
        if dims.len() < 2 {
            return Err(ResolutionError::Invalid(
                "an unbounded resolution needs at least one map".to_string(),
            ));
        }
        let (plus, minus) = synth_parts(seed, dims)?;
        let modules = synth_modules(dims, truncation);
        let maps = (0..dims.len() - 1)
            .map(|j| {
                modules[j].mode_map(
                    &modules[j + 1],
                    plus.maps[j].as_ref(),
                    minus.maps[j].as_ref(),
                    |m| 1.0 + m.unsigned_abs() as f64,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(modules, maps)
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

    pub fn complex_defect(&self) -> f64 {
        self.complex_defect
    }

    /// `P₀`, the projection onto `ker A₀`.
    pub fn p0(&self) -> Result<Projection> {
        Ok(kernel_projection(&self.maps[0], RANK_TOL)?)
    }

    /// `P_n`, the projection onto `(im A_{n−1})^⊥`.
    pub fn pn(&self) -> Result<Projection> {
        let a = self.maps.last().expect("nonempty");
        Ok(range_projection(a, RANK_TOL)?.complement())
    }

    /// Dimensions of the cohomology at `H_1, …, H_{n−1}` from rank decisions.
    pub fn middle_cohomology(&self) -> Result<Vec<usize>> {
        let mut ranks = Vec::with_capacity(self.maps.len());
        for a in &self.maps {
            ranks.push(fredholm_defect(a, RANK_TOL)?.rank);
        }
        Ok((1..self.maps.len())
            .map(|j| self.modules[j].dim() - ranks[j] - ranks[j - 1])
            .collect())
    }

    /// Measured `‖[a, A_j]‖` for each map.
    pub fn commutator_bounds(&self, f: &CircleFunction) -> Result<Vec<f64>> {
        commutator_norms(&self.modules, &self.maps, f)
    }
}

/// `Δ_j = A_j*A_j + A_{j−1}A_{j−1}*`, with `A_{−1} = A_n = 0`.
pub fn laplacians(res: &UnboundedResolution) -> Result<Vec<LinearOperator>> {
    let n = res.length();
    (0..=n)
        .map(|j| {
            let d = res.modules[j].dim();
            let mut m = Mat::<c64>::zeros(d, d);
            if j < n {
                let a = res.maps[j].mat();
                m += a.adjoint() * a;
            }
            if j > 0 {
                let a = res.maps[j - 1].mat();
                m += a * a.adjoint();
            }
            Ok(LinearOperator::on(res.modules[j].space().clone(), m)?)
        })
        .collect()
}

/// Defect of `Δ_j = A_{j−1}A_{j−1}* ⊕ A_j*A_j` with respect to
/// `H_j = im A_{j−1} ⊕ im A_j*`, for `0 < j < n`.
pub fn laplacian_splitting_defect(res: &UnboundedResolution, j: usize) -> Result<f64> {
    let lap = &laplacians(res)?[j];
    let r = range_projection(&res.maps[j - 1], RANK_TOL)?;
    let c = r.complement();
    let l = lap.mat();
    let off = r.mat() * l * c.mat();
    Ok(norm_fro(off.as_ref()))
}

/// `B_j = A_j(1 + Δ_j)^{−1/2}` through the spectral decomposition of `Δ_j`.
pub fn bounded_normalization(res: &UnboundedResolution) -> Result<BoundedResolution> {
    let laps = laplacians(res)?;
    let mut maps = Vec::with_capacity(res.length());
    for (j, a) in res.maps.iter().enumerate() {
        let s = spectral_function(&laps[j], |l| 1.0 / (1.0 + l.max(0.0)).sqrt())?;
        maps.push(a.compose(&s)?);
    }
    BoundedResolution::new(res.p0()?, res.modules.clone(), maps)
}

/// How `B_j` relates to `A_j` under rank decisions.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationReport {
    /// Largest `‖B_j‖` (at most 1).
    pub max_norm: f64,
    pub kernel_defects: Vec<f64>,
    pub range_defects: Vec<f64>,
    pub ranks_agree: bool,
    /// `‖P_n(B) − P_n(A)‖`.
    pub dual_defect: f64,
}

pub fn normalization_report(
    res: &UnboundedResolution,
    bounded: &BoundedResolution,
) -> Result<NormalizationReport> {
    let mut max_norm: f64 = 0.0;
    let mut kernel_defects = Vec::new();
    let mut range_defects = Vec::new();
    let mut ranks_agree = true;
    for (a, b) in res.maps.iter().zip(bounded.maps()) {
        let s = conelab_linop::singular_values(b)?;
        max_norm = max_norm.max(s.first().copied().unwrap_or(0.0));
        kernel_defects.push(projection_distance(
            &kernel_projection(a, RANK_TOL)?,
            &kernel_projection(b, RANK_TOL)?,
        ));
        range_defects.push(projection_distance(
            &range_projection(a, RANK_TOL)?,
            &range_projection(b, RANK_TOL)?,
        ));
        ranks_agree &= fredholm_defect(a, RANK_TOL)?.rank == fredholm_defect(b, RANK_TOL)?.rank;
    }
    let dual_defect = projection_distance(&res.pn()?, &crate::bounded::dual_projection(bounded)?);
    Ok(NormalizationReport {
        max_norm,
        kernel_defects,
        range_defects,
        ranks_agree,
        dual_defect,
    })
}

/// `D = A + A* + P₀ + (−1)^{n+1}P_n`.
pub fn unbounded_roll_up(res: &UnboundedResolution) -> Result<RollUp> {
    assemble_roll_up(&res.modules, &res.maps, &res.p0()?, &res.pn()?)
}

/// Comparison of the roll-ups of a complex and of its bounded normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct RollUpComparison {
    /// `‖P₊(D̃) − P₊(D)‖`.
    pub projection_defect: f64,
    /// `‖B + B* − (A + A*)(1 + (A + A*)²)^{−1/2}‖`.
    pub identity_defect: f64,
}

fn sum_operator(res_modules: &[HilbertModule], maps: &[LinearOperator]) -> Result<LinearOperator> {
    let space = direct_sum_space(res_modules);
    let off = offsets(res_modules);
    let n = space.dim();
    let mut m = Mat::<c64>::zeros(n, n);
    for (j, a) in maps.iter().enumerate() {
        let (r, c) = (a.nrows(), a.ncols());
        m.as_mut()
            .submatrix_mut(off[j + 1], off[j], r, c)
            .copy_from(a.mat());
        m.as_mut()
            .submatrix_mut(off[j], off[j + 1], c, r)
            .copy_from(a.mat().adjoint());
    }
    Ok(LinearOperator::on(space, m)?)
}

pub fn unbounded_roll_up_check(res: &UnboundedResolution) -> Result<RollUpComparison> {
    let bounded = bounded_normalization(res)?;
    let d = unbounded_roll_up(res)?;
    let dt = crate::bounded::roll_up(&bounded)?;
    let projection_defect =
        norm_fro((d.positive_projection()?.mat() - dt.positive_projection()?.mat()).as_ref());
    let a_sum = sum_operator(&res.modules, &res.maps)?;
    let b_sum = sum_operator(&res.modules, bounded.maps())?;
    let f = spectral_function(&a_sum, |l| l / (1.0 + l * l).sqrt())?;
    let identity_defect = norm_fro((b_sum.mat() - f.mat()).as_ref());
    Ok(RollUpComparison {
        projection_defect,
        identity_defect,
    })
}

/// Finite witness of compact resolvent for the middle Laplacians: the number of
/// eigenvalues below `level` and the largest eigenvalue at each truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthRow {
    pub truncation: usize,
    pub position: usize,
    pub count_below: usize,
    pub max_eigenvalue: f64,
    pub min_eigenvalue: f64,
}

pub fn growth_certificate(
    truncations: &[usize],
    level: f64,
    build: impl Fn(usize) -> Result<UnboundedResolution>,
) -> Result<Vec<GrowthRow>> {
    let mut rows = Vec::new();
    for &t in truncations {
        let res = build(t)?;
        let laps = laplacians(&res)?;
        for (j, lap) in laps.iter().enumerate().take(res.length()).skip(1) {
            let e = hermitian_eig(lap)?;
            rows.push(GrowthRow {
                truncation: t,
                position: j,
                count_below: e.values.iter().filter(|&&l| l <= level).count(),
                max_eigenvalue: e.values.last().copied().unwrap_or(0.0),
                min_eigenvalue: e.values.first().copied().unwrap_or(0.0),
            });
        }
    }
    Ok(rows)
}
