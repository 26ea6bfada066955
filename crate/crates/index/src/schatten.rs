use conelab_linop::{schatten_from_singular_values, singular_values, LinearOperator, Projection};

use crate::error::Result;

/// Exponents of the decay table.
pub const SCHATTEN_EXPONENTS: [f64; 4] = [1.0, 1.5, 2.0, 4.0];

/// One row of the Schatten decay table.
#[derive(Debug, Clone, PartialEq)]
pub struct SchattenRow {
    pub truncation: usize,
    pub exponent: f64,
    pub norm: f64,
    /// Successive changes in this column are non-increasing up to this row.
    pub stabilizing: bool,
}

/// `‖[P, a]‖_{𝔖_k}` for `k ∈ {1, 1.5, 2, 4}` across truncations.
pub fn schatten_decay_profile(
    truncations: &[usize],
    build: impl Fn(usize) -> Result<(Projection, LinearOperator)>,
) -> Result<Vec<SchattenRow>> {
    let mut table: Vec<Vec<f64>> = Vec::new();
    for &t in truncations {
        let (p, a) = build(t)?;
        let c = p.op().commutator(&a)?;
        let s = singular_values(&c)?;
        table.push(
            SCHATTEN_EXPONENTS
                .iter()
                .map(|&k| schatten_from_singular_values(&s, k))
                .collect(),
        );
    }
    let mut rows = Vec::new();
    for (col, &k) in SCHATTEN_EXPONENTS.iter().enumerate() {
        let mut stabilizing = true;
        for (i, &t) in truncations.iter().enumerate() {
            if i >= 2 {
                let d1 = (table[i - 1][col] - table[i - 2][col]).abs();
                let d2 = (table[i][col] - table[i - 1][col]).abs();
                stabilizing &= d2 <= d1 + 1e-12 * table[i][col].max(1.0);
            }
            rows.push(SchattenRow {
                truncation: t,
                exponent: k,
                norm: table[i][col],
                stabilizing,
            });
        }
    }
    Ok(rows)
}
