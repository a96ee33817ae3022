use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::fft;
use crate::grid::FrequencyGrid;
use crate::series::{centered, TimeSeries};

/// `I(λ_j) = (2πn)^{-1} |Σ_t (x_t − x̄) e^{-itλ_j}|²` on the grid.
pub fn periodogram(x: &TimeSeries, grid: FrequencyGrid) -> Vec<f64> {
    periodogram_of(x.values(), grid.len())
}

pub(crate) fn periodogram_of(x: &[f64], size: usize) -> Vec<f64> {
    let y = centered(x);
    let n = y.len();
    let mut buf = vec![Complex64::new(0.0, 0.0); size];
    // e^{-itλ_j} is N-periodic in t: longer series fold onto the grid exactly.
    for (t, v) in y.iter().enumerate() {
        buf[t % size].re += v;
    }
    fft::forward(&mut buf);
    let scale = 1.0 / (2.0 * PI * n as f64);
    buf.into_iter().map(|z| scale * fft::norm_sqr(z)).collect()
}

/// Periodogram at the natural Fourier frequencies `2πj/n`, `j = 0..n`.
pub fn fourier_ordinates(x: &[f64]) -> Vec<f64> {
    periodogram_of(x, x.len())
}
