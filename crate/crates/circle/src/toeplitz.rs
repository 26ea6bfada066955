use std::sync::Arc;

use conelab_linop::faer::{Mat, MatRef};
use conelab_linop::{c64, Action};
use rustfft::{Fft, FftPlanner};

/// Below this size products are formed densely.
const DENSE_LIMIT: usize = 96;

/// Finite Toeplitz matrix `T_{ij} = c_{i−j}` applied through circulant embedding.
#[derive(Clone)]
pub struct Toeplitz {
    n: usize,
    coeffs: Vec<c64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    spectrum: Vec<c64>,
    adjoint_spectrum: Vec<c64>,
}

impl std::fmt::Debug for Toeplitz {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Toeplitz").field("n", &self.n).finish()
    }
}

impl Toeplitz {
    /// `coeff(m)` is queried for `m = -(n-1)..=(n-1)`.
    pub fn new(n: usize, coeff: impl Fn(i64) -> c64) -> Self {
        let span = n.saturating_sub(1) as i64;
        let coeffs: Vec<c64> = (-span..=span).map(coeff).collect();
        let len = (2 * n).next_power_of_two().max(2);
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(len);
        let inverse = planner.plan_fft_inverse(len);
        let embed = |adj: bool| {
            let mut col = vec![c64::new(0.0, 0.0); len];
            for k in -span..=span {
                let c = coeffs[(k + span) as usize];
                let v = if adj {
                    coeffs[(span - k) as usize].conj()
                } else {
                    c
                };
                col[k.rem_euclid(len as i64) as usize] = v;
            }
            forward.process(&mut col);
            col
        };
        let spectrum = embed(false);
        let adjoint_spectrum = embed(true);
        Self {
            n,
            coeffs,
            forward,
            inverse,
            spectrum,
            adjoint_spectrum,
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, m: i64) -> c64 {
        let span = self.n.saturating_sub(1) as i64;
        if m.abs() > span {
            return c64::new(0.0, 0.0);
        }
        self.coeffs[(m + span) as usize]
    }

    pub fn dense(&self) -> Mat<c64> {
        Mat::from_fn(self.n, self.n, |i, j| self.coeff(i as i64 - j as i64))
    }

    fn run(&self, x: MatRef<'_, c64>, adjoint: bool) -> Mat<c64> {
        assert_eq!(x.nrows(), self.n);
        if self.n <= DENSE_LIMIT {
            let d = self.dense();
            return if adjoint { d.adjoint() * x } else { &d * x };
        }
        let spec = if adjoint {
            &self.adjoint_spectrum
        } else {
            &self.spectrum
        };
        let len = spec.len();
        let scale = 1.0 / len as f64;
        let mut out = Mat::zeros(self.n, x.ncols());
        let mut buf = vec![c64::new(0.0, 0.0); len];
        for j in 0..x.ncols() {
            let col = x.col(j);
            buf.iter_mut().for_each(|b| *b = c64::new(0.0, 0.0));
            for i in 0..self.n {
                buf[i] = col[i];
            }
            self.forward.process(&mut buf);
            for (b, s) in buf.iter_mut().zip(spec) {
                *b *= s;
            }
            self.inverse.process(&mut buf);
            for i in 0..self.n {
                out[(i, j)] = buf[i] * scale;
            }
        }
        out
    }
}

impl Action for Toeplitz {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, x: MatRef<'_, c64>) -> Mat<c64> {
        self.run(x, false)
    }

    fn apply_adjoint(&self, x: MatRef<'_, c64>) -> Mat<c64> {
        self.run(x, true)
    }

    fn to_dense(&self) -> Mat<c64> {
        self.dense()
    }
}
