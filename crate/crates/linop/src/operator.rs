use std::sync::Arc;

use faer::{c64, Mat, MatRef};

use crate::error::{LinopError, Result};
use crate::space::SpaceTag;

/// Dense complex matrix between two tagged spaces.
#[derive(Debug, Clone)]
pub struct LinearOperator {
    domain: Arc<SpaceTag>,
    codomain: Arc<SpaceTag>,
    mat: Mat<c64>,
}

fn same_space(a: &Arc<SpaceTag>, b: &Arc<SpaceTag>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn check_space(expected: &Arc<SpaceTag>, found: &Arc<SpaceTag>) -> Result<()> {
    if same_space(expected, found) {
        Ok(())
    } else {
        Err(LinopError::SpaceMismatch {
            expected: expected.name().to_string(),
            found: found.name().to_string(),
        })
    }
}

impl LinearOperator {
    pub fn new(domain: Arc<SpaceTag>, codomain: Arc<SpaceTag>, mat: Mat<c64>) -> Result<Self> {
        let expected = (codomain.dim(), domain.dim());
        let found = (mat.nrows(), mat.ncols());
        if expected != found {
            return Err(LinopError::ShapeMismatch { expected, found });
        }
        Ok(Self {
            domain,
            codomain,
            mat,
        })
    }

    /// Square operator on `space`.
    pub fn on(space: Arc<SpaceTag>, mat: Mat<c64>) -> Result<Self> {
        Self::new(space.clone(), space, mat)
    }

    pub fn from_fn(
        domain: Arc<SpaceTag>,
        codomain: Arc<SpaceTag>,
        f: impl FnMut(usize, usize) -> c64,
    ) -> Self {
        let mat = Mat::from_fn(codomain.dim(), domain.dim(), f);
        Self {
            domain,
            codomain,
            mat,
        }
    }

    pub fn identity(space: Arc<SpaceTag>) -> Self {
        let n = space.dim();
        Self {
            domain: space.clone(),
            codomain: space,
            mat: Mat::identity(n, n),
        }
    }

    pub fn zeros(domain: Arc<SpaceTag>, codomain: Arc<SpaceTag>) -> Self {
        let mat = Mat::zeros(codomain.dim(), domain.dim());
        Self {
            domain,
            codomain,
            mat,
        }
    }

    pub fn diagonal(space: Arc<SpaceTag>, diag: &[c64]) -> Result<Self> {
        let n = space.dim();
        if diag.len() != n {
            return Err(LinopError::ShapeMismatch {
                expected: (n, n),
                found: (diag.len(), diag.len()),
            });
        }
        let mut mat = Mat::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            mat[(i, i)] = *d;
        }
        Ok(Self {
            domain: space.clone(),
            codomain: space,
            mat,
        })
    }

    pub fn domain(&self) -> &Arc<SpaceTag> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<SpaceTag> {
        &self.codomain
    }

    pub fn mat(&self) -> MatRef<'_, c64> {
        self.mat.as_ref()
    }

    pub fn into_mat(self) -> Mat<c64> {
        self.mat
    }

    pub fn nrows(&self) -> usize {
        self.mat.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.mat.ncols()
    }

    pub fn is_square(&self) -> bool {
        same_space(&self.domain, &self.codomain)
    }

    pub(crate) fn require_square(&self) -> Result<()> {
        if self.nrows() != self.ncols() {
            return Err(LinopError::NotSquare {
                rows: self.nrows(),
                cols: self.ncols(),
            });
        }
        check_space(&self.domain, &self.codomain)
    }

    pub fn entry(&self, i: usize, j: usize) -> c64 {
        self.mat[(i, j)]
    }

    /// Conjugate transpose; involutive bit for bit.
    pub fn adjoint(&self) -> Self {
        Self {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            mat: self.mat.adjoint().to_owned(),
        }
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &LinearOperator) -> Result<Self> {
        check_space(&self.domain, &rhs.codomain)?;
        Ok(Self {
            domain: rhs.domain.clone(),
            codomain: self.codomain.clone(),
            mat: &self.mat * &rhs.mat,
        })
    }

    fn check_same_shape(&self, rhs: &LinearOperator) -> Result<()> {
        check_space(&self.domain, &rhs.domain)?;
        check_space(&self.codomain, &rhs.codomain)
    }

    pub fn add(&self, rhs: &LinearOperator) -> Result<Self> {
        self.check_same_shape(rhs)?;
        Ok(Self {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            mat: &self.mat + &rhs.mat,
        })
    }

    pub fn sub(&self, rhs: &LinearOperator) -> Result<Self> {
        self.check_same_shape(rhs)?;
        Ok(Self {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            mat: &self.mat - &rhs.mat,
        })
    }

    pub fn scale(&self, c: c64) -> Self {
        Self {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            mat: Mat::from_fn(self.nrows(), self.ncols(), |i, j| self.mat[(i, j)] * c),
        }
    }

    /// Commutator `self·rhs − rhs·self`.
    pub fn commutator(&self, rhs: &LinearOperator) -> Result<Self> {
        self.compose(rhs)?.sub(&rhs.compose(self)?)
    }

    pub fn apply(&self, x: &[c64]) -> Result<Vec<c64>> {
        if x.len() != self.ncols() {
            return Err(LinopError::ShapeMismatch {
                expected: (self.ncols(), 1),
                found: (x.len(), 1),
            });
        }
        let mut y = vec![c64::new(0.0, 0.0); self.nrows()];
        for (j, &xj) in x.iter().enumerate() {
            if xj == c64::new(0.0, 0.0) {
                continue;
            }
            let col = self.mat.col(j);
            for (i, yi) in y.iter_mut().enumerate() {
                *yi += col[i] * xj;
            }
        }
        Ok(y)
    }

    /// Trace summed in ascending index order.
    pub fn trace(&self) -> Result<c64> {
        self.require_square()?;
        Ok(trace(self.mat.as_ref()))
    }

    pub fn norm_fro(&self) -> f64 {
        norm_fro(self.mat.as_ref())
    }

    /// Largest entry modulus.
    pub fn norm_max(&self) -> f64 {
        let mut m: f64 = 0.0;
        for j in 0..self.ncols() {
            for i in 0..self.nrows() {
                m = m.max(self.mat[(i, j)].norm());
            }
        }
        m
    }

    /// Same matrix, relabelled spaces of equal dimension.
    pub fn retag(&self, domain: Arc<SpaceTag>, codomain: Arc<SpaceTag>) -> Result<Self> {
        Self::new(domain, codomain, self.mat.clone())
    }
}

pub fn trace(m: MatRef<'_, c64>) -> c64 {
    let mut s = c64::new(0.0, 0.0);
    for i in 0..m.nrows().min(m.ncols()) {
        s += m[(i, i)];
    }
    s
}

/// `Tr(a·b)` without forming the product.
pub fn trace_of_product(a: MatRef<'_, c64>, b: MatRef<'_, c64>) -> c64 {
    assert_eq!(a.ncols(), b.nrows());
    assert_eq!(a.nrows(), b.ncols());
    let mut s = c64::new(0.0, 0.0);
    for i in 0..a.nrows() {
        let mut row = c64::new(0.0, 0.0);
        for k in 0..a.ncols() {
            row += a[(i, k)] * b[(k, i)];
        }
        s += row;
    }
    s
}

/// Frobenius norm with a fixed column-major summation order.
pub fn norm_fro(m: MatRef<'_, c64>) -> f64 {
    let mut scale: f64 = 0.0;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            scale = scale.max(m[(i, j)].norm());
        }
    }
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let mut s = 0.0;
    for j in 0..m.ncols() {
        let mut col = 0.0;
        for i in 0..m.nrows() {
            let z = m[(i, j)] / scale;
            col += z.re * z.re + z.im * z.im;
        }
        s += col;
    }
    scale * s.sqrt()
}
