use conelab_circle::{CircleFunction, TrigPolynomial};
use conelab_index::{index_via_character_factored, IndexReport};
use conelab_linop::{c64, Action, Projection};

use crate::bounded::{roll_up, BoundedResolution};
use crate::error::Result;
use crate::module::{diagonal_action, direct_sum_space};

/// A named elliptic circle symbol.
#[derive(Debug, Clone)]
pub struct BatterySymbol {
    pub name: String,
    pub symbol: CircleFunction,
}

fn poly(terms: &[(i64, f64, f64)]) -> TrigPolynomial {
    TrigPolynomial::new(terms.iter().map(|&(k, re, im)| (k, c64::new(re, im))))
}

/// Six elliptic symbols with windings `0, 1, −1, 2, 1, 0`.
pub fn circle_battery() -> Vec<BatterySymbol> {
    let entries = [
        ("one", CircleFunction::one()),
        ("shift", CircleFunction::exp_i(1)),
        ("shift_inverse", CircleFunction::exp_i(-1)),
        ("shift_squared", CircleFunction::exp_i(2)),
        (
            "blaschke",
            CircleFunction::new(
                poly(&[(1, 1.0, 0.0), (0, -0.5, 0.0)]),
                poly(&[(0, 1.0, 0.0), (1, -0.5, 0.0)]),
            )
            .expect("nonvanishing denominator"),
        ),
        (
            "perturbed_constant",
            CircleFunction::new(
                poly(&[(0, 2.0, 0.0), (1, 0.6, 0.2), (-2, 0.0, 0.5)]),
                TrigPolynomial::one(),
            )
            .expect("polynomial"),
        ),
    ];
    entries
        .into_iter()
        .map(|(name, symbol)| BatterySymbol {
            name: name.to_string(),
            symbol,
        })
        .collect()
}

/// Indices of one symbol under `P` and under `P₊(D)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceRow {
    pub symbol: String,
    pub via_projection: IndexReport,
    pub via_roll_up: IndexReport,
}

impl EquivalenceRow {
    pub fn conclusive(&self) -> bool {
        self.via_projection.is_conclusive() && self.via_roll_up.is_conclusive()
    }

    pub fn agree(&self) -> bool {
        self.via_projection.rounded == self.via_roll_up.rounded
    }
}

fn index_on(p: &Projection, a: &dyn Action, a_inv: &dyn Action) -> Result<IndexReport> {
    let w = p.range_basis()?;
    Ok(index_via_character_factored(w.as_ref(), a, a_inv, 1)?)
}

/// Compares the Toeplitz quantizations by `P` and by `P₊(D)`, the symbol acting
/// diagonally on `⊕ H_j`.
pub fn equivalence_test(
    res: &BoundedResolution,
    battery: &[BatterySymbol],
) -> Result<Vec<EquivalenceRow>> {
    let pd = roll_up(res)?.positive_projection()?;
    let modules = res.modules();
    let space = direct_sum_space(modules);
    let mut rows = Vec::with_capacity(battery.len());
    for b in battery {
        let inv = b.symbol.inv()?;
        let a0 = modules[0].act(&b.symbol);
        let a0_inv = modules[0].act(&inv);
        let via_projection = index_on(res.projection(), &a0, &a0_inv)?;
        let a = diagonal_action(modules, &space, &b.symbol);
        let a_inv = diagonal_action(modules, &space, &inv);
        let via_roll_up = index_on(&pd, &a, &a_inv)?;
        rows.push(EquivalenceRow {
            symbol: b.name.clone(),
            via_projection,
            via_roll_up,
        });
    }
    Ok(rows)
}
