use std::sync::Arc;

use conelab_linop::{BasisLabel, SpaceTag};

/// Fourier modes `-N..=N` on the circle and on its two-sheeted cosphere bundle.
#[derive(Debug, Clone)]
pub struct CircleTruncation {
    n: usize,
    space: Arc<SpaceTag>,
    double_space: Arc<SpaceTag>,
}

impl CircleTruncation {
    pub fn new(n: usize) -> Self {
        let space = Arc::new(SpaceTag::modes(format!("L2(S1)[N={n}]"), n));
        let m = n as i64;
        let labels = [1, -1]
            .iter()
            .flat_map(|&s| (-m..=m).map(move |k| BasisLabel::Sheet(s, k)))
            .collect();
        let double_space = Arc::new(
            SpaceTag::new(format!("L2(S*S1)[N={n}]"), labels).expect("labels are distinct"),
        );
        Self {
            n,
            space,
            double_space,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    pub fn space(&self) -> &Arc<SpaceTag> {
        &self.space
    }

    pub fn double_space(&self) -> &Arc<SpaceTag> {
        &self.double_space
    }

    /// Mode carried by position `i`.
    pub fn mode(&self, i: usize) -> i64 {
        i as i64 - self.n as i64
    }

    /// Position of mode `m`, if kept.
    pub fn position(&self, m: i64) -> Option<usize> {
        let i = m + self.n as i64;
        (0..self.dim() as i64).contains(&i).then_some(i as usize)
    }
}
