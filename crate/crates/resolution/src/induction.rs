use conelab_linop::faer::{Mat, MatRef};
use conelab_linop::{
    c64, norm_fro, positive_spectral_projection_with, range_projection, LinearOperator, Projection,
    RANK_TOL,
};

use crate::bounded::{dual_projection, hermitian_average, roll_up, BoundedResolution};
use crate::error::Result;
use crate::module::offsets;
use crate::reduction::reduction_unitary;

/// Defects of one inductive step from length `k` to `k + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct InductionStep {
    pub k: usize,
    /// `D_k` carries `+P̃_k`, so `P₊(D_k) = P₊(B) ⊕ P̃_k`.
    pub upper_signs: bool,
    /// Norm of `D_{k+1}` outside the blocks `H_{<k} ⊕ R_k`, `E_k ⊕ R_{k+1}`, `E_{k+1}`.
    pub block_defect: f64,
    /// `‖P₊(D_{k+1}) − (P₊(B) ⊕ P₊(V) [⊕ P̃_{k+1}])‖`.
    pub projection_defect: f64,
    /// Defects of the reducing unitary for `A: E_k → R_{k+1}`.
    pub unitarity_defect: f64,
    pub reduction_defect: f64,
}

fn embed(p: MatRef<'_, c64>, total: usize, at: usize) -> Mat<c64> {
    let mut m = Mat::<c64>::zeros(total, total);
    let n = p.nrows();
    m.as_mut().submatrix_mut(at, at, n, n).copy_from(p);
    m
}

fn basis_of(p: &Projection) -> Result<Mat<c64>> {
    Ok(p.range_basis()?)
}

/// Checks the block decomposition of the roll-ups at lengths `k` and `k + 1`.
pub fn inductive_step(res: &BoundedResolution, k: usize) -> Result<InductionStep> {
    let short = res.truncate(k)?;
    let long = res.truncate(k + 1)?;
    let dk = roll_up(&short)?;
    let dk1 = roll_up(&long)?;
    let pk = dk.positive_projection()?;
    let pk1 = dk1.positive_projection()?;
    let off = offsets(long.modules());
    let total = off[k + 2];

    // R_k ⊂ H_k and R_{k+1} ⊂ H_{k+1}.
    let r_k = if k == 0 {
        res.projection().clone()
    } else {
        range_projection(&res.maps()[k - 1], RANK_TOL)?
    };
    let r_k1 = range_projection(&res.maps()[k], RANK_TOL)?;
    let e_k = r_k.complement();
    let e_k1 = dual_projection(&long)?;

    let mut q_b = Mat::<c64>::identity(total, total);
    for i in off[k]..total {
        q_b[(i, i)] = c64::new(0.0, 0.0);
    }
    q_b += embed(r_k.mat(), total, off[k]);
    let q_v = embed(e_k.mat(), total, off[k]) + embed(r_k1.mat(), total, off[k + 1]);
    let q_e = embed(e_k1.mat(), total, off[k + 1]);

    let d = dk1.d.mat();
    let blocks = &q_b * d * &q_b + &q_v * d * &q_v + &q_e * d * &q_e;
    let block_defect = norm_fro((d - &blocks).as_ref());

    let upper_signs = dk.sign > 0.0;
    let v = LinearOperator::on(dk1.space.clone(), hermitian_average(&(&q_v * d * &q_v)))?;
    let scale = norm_fro(d).max(1.0);
    let pv = positive_spectral_projection_with(&v, 1e-8 * scale, false)?;
    let pk_embedded = embed(pk.mat(), total, 0);
    let mut assembled = &q_b * &pk_embedded * &q_b + pv.mat();
    if !upper_signs {
        assembled += &q_e;
    }
    let projection_defect = norm_fro((pk1.mat() - &assembled).as_ref());

    // A restricted to E_k → R_{k+1} in orthonormal bases.
    let eb = basis_of(&e_k)?;
    let rb = basis_of(&r_k1)?;
    let a = res.maps()[k].mat();
    let restricted = rb.adjoint() * a * &eb;
    let (unitarity_defect, reduction_defect) = if restricted.nrows() == 0 {
        (0.0, 0.0)
    } else {
        let e_space = std::sync::Arc::new(conelab_linop::SpaceTag::indexed("E", eb.ncols()));
        let r_space = std::sync::Arc::new(conelab_linop::SpaceTag::indexed("R", rb.ncols()));
        let red = reduction_unitary(&LinearOperator::new(e_space, r_space, restricted)?)?;
        (red.unitarity_defect(), red.block_defect())
    };
    Ok(InductionStep {
        k,
        upper_signs,
        block_defect,
        projection_defect,
        unitarity_defect,
        reduction_defect,
    })
}
