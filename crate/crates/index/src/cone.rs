use conelab_cone::{
    pseudo_guillemin, ConeAction, ConeGeometry, ConeSymbol, CutoffSystem, ToeplitzProjection,
};

use crate::error::{IndexError, Result};
use crate::formula::{index_via_character_factored, IndexReport};

/// Character order used for the cone. At order 1 the interior contribution
/// is biased by the truncation edge; order 3 converges.
pub const CONE_CHARACTER_ORDER: usize = 3;

/// The cone Toeplitz projection together with its geometry, reused across symbols.
pub struct ConeIndexer {
    geo: ConeGeometry,
    proj: ToeplitzProjection,
}

impl ConeIndexer {
    pub fn new(geo: ConeGeometry) -> Result<Self> {
        let cs = CutoffSystem::standard(&geo);
        let gamma = pseudo_guillemin(&geo, &cs)?;
        let proj = ToeplitzProjection::new(gamma)?;
        Ok(Self { geo, proj })
    }

    pub fn geometry(&self) -> &ConeGeometry {
        &self.geo
    }

    pub fn projection(&self) -> &ToeplitzProjection {
        &self.proj
    }

    /// Index of the Toeplitz operator of an elliptic cone symbol.
    pub fn index(&self, a: &ConeSymbol, n: usize) -> Result<IndexReport> {
        if !a.is_elliptic() {
            return Err(IndexError::NotElliptic {
                min_modulus: a.min_modulus(),
            });
        }
        let a_inv = a.inv()?;
        let act = ConeAction::new(a, &self.geo);
        let act_inv = ConeAction::new(&a_inv, &self.geo);
        index_via_character_factored(self.proj.basis().as_ref(), &act, &act_inv, n)
    }
}
