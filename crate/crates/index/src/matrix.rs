use std::sync::Arc;

use conelab_linop::faer::Mat;
use conelab_linop::{c64, BasisLabel, LinearOperator, LinopError, Projection, SpaceTag};

use crate::error::Result;

/// `H ⊗ ℂ^m`, labelled `Sheet(row, label)`.
pub fn tensor_space(space: &SpaceTag, m: usize) -> Arc<SpaceTag> {
    let labels = (0..m)
        .flat_map(|k| {
            space
                .labels()
                .iter()
                .enumerate()
                .map(move |(i, l)| match *l {
                    BasisLabel::Index(x) => BasisLabel::Sheet(k as i32, x),
                    _ => BasisLabel::Sheet(k as i32, i as i64),
                })
        })
        .collect();
    Arc::new(SpaceTag::new(format!("{}⊗C{m}", space.name()), labels).expect("distinct labels"))
}

/// `P ⊗ 1_m`.
pub fn tensor_projection(p: &Projection, m: usize) -> Result<Projection> {
    let d = p.space().dim();
    let space = tensor_space(p.space(), m);
    let mat = Mat::from_fn(m * d, m * d, |i, j| {
        if i / d == j / d {
            p.mat()[(i % d, j % d)]
        } else {
            c64::new(0.0, 0.0)
        }
    });
    Ok(Projection::new(
        LinearOperator::on(space, mat)?,
        p.tol() * m as f64,
    )?)
}

/// Matrix of operators `[a_{ij}]` acting on `H ⊗ ℂ^m`.
pub fn matrix_operator(entries: &[Vec<LinearOperator>]) -> Result<LinearOperator> {
    let m = entries.len();
    let base = entries[0][0].domain().clone();
    let d = base.dim();
    let mut mat = Mat::<c64>::zeros(m * d, m * d);
    for (i, row) in entries.iter().enumerate() {
        if row.len() != m {
            return Err(LinopError::ShapeMismatch {
                expected: (m, m),
                found: (m, row.len()),
            }
            .into());
        }
        for (j, e) in row.iter().enumerate() {
            if e.domain() != &base || e.codomain() != &base {
                return Err(LinopError::SpaceMismatch {
                    expected: base.name().to_string(),
                    found: e.domain().name().to_string(),
                }
                .into());
            }
            mat.as_mut()
                .submatrix_mut(i * d, j * d, d, d)
                .copy_from(e.mat());
        }
    }
    Ok(LinearOperator::on(tensor_space(&base, m), mat)?)
}
