use conelab_circle::Toeplitz;
use conelab_linop::faer::{Mat, MatRef};
use conelab_linop::{c64, Action, LinearOperator};

use crate::conormal::sheet_conormal;
use crate::geometry::ConeGeometry;
use crate::guillemin::double_multiplication;
use crate::symbol::ConeSymbol;

/// Module action of a cone symbol on the ambient space: multiplication by
/// `a_±` on the two sheets of `S*2M` and `𝐀_ω(−i∂/∂t)` on the cylinder sheets.
#[derive(Debug, Clone)]
pub struct ConeAction {
    blocks: [Toeplitz; 4],
}

impl ConeAction {
    pub fn new(a: &ConeSymbol, geo: &ConeGeometry) -> Self {
        let plus = double_multiplication(geo, |sigma| a.on_double(geo, true, sigma));
        let minus = double_multiplication(geo, |sigma| a.on_double(geo, false, sigma));
        let cyl_plus = sheet_conormal(&a.conormal().plus, geo);
        let cyl_minus = sheet_conormal(&a.conormal().minus, geo);
        Self {
            blocks: [plus, minus, cyl_plus, cyl_minus],
        }
    }

    /// Blocks in ambient order: `ξ = +`, `ξ = −`, `ω = +`, `ω = −`.
    pub fn blocks(&self) -> &[Toeplitz; 4] {
        &self.blocks
    }

    pub fn to_operator(&self, geo: &ConeGeometry) -> LinearOperator {
        LinearOperator::on(geo.ambient_space().clone(), self.to_dense()).expect("ambient dimension")
    }

    fn run(&self, x: MatRef<'_, c64>, adjoint: bool) -> Mat<c64> {
        let mut out = Mat::zeros(x.nrows(), x.ncols());
        let mut off = 0;
        for b in &self.blocks {
            let d = b.dim();
            let xb = x.subrows(off, d);
            let yb = if adjoint {
                b.apply_adjoint(xb)
            } else {
                b.apply(xb)
            };
            out.as_mut().subrows_mut(off, d).copy_from(&yb);
            off += d;
        }
        out
    }
}

impl Action for ConeAction {
    fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim()).sum()
    }

    fn apply(&self, x: MatRef<'_, c64>) -> Mat<c64> {
        self.run(x, false)
    }

    fn apply_adjoint(&self, x: MatRef<'_, c64>) -> Mat<c64> {
        self.run(x, true)
    }

    fn to_dense(&self) -> Mat<c64> {
        let n = self.dim();
        let mut out = Mat::zeros(n, n);
        let mut off = 0;
        for b in &self.blocks {
            let d = b.dim();
            out.as_mut()
                .submatrix_mut(off, off, d, d)
                .copy_from(b.dense());
            off += d;
        }
        out
    }
}
