use alloc::vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use super::{check_variance, EstimatorFamily, LagKernel, SpectralDensityEstimate, Tuning};
use crate::error::{Error, Result};
use crate::fft;
use crate::grid::FrequencyGrid;
use crate::series::{autocovariances, TimeSeries};

/// `f̂(λ) = (2π)^{-1} Σ_{|h|≤T} w(h/T) γ̂(h) e^{-ihλ}`, floored.
pub fn lag_window_estimate(
    x: &TimeSeries,
    kernel: LagKernel,
    truncation: usize,
    grid: FrequencyGrid,
) -> Result<SpectralDensityEstimate> {
    if truncation == 0 || truncation >= x.len() {
        return Err(Error::InvalidParameter("lag-window truncation must satisfy 1 <= T < n"));
    }
    let gamma = autocovariances(x, truncation);
    check_variance(x, gamma[0])?;
    let values = lag_window_values(&gamma, kernel, truncation, grid.len());
    Ok(SpectralDensityEstimate::floored(
        grid,
        values,
        EstimatorFamily::LagWindow,
        Tuning::LagWindow { kernel, truncation },
    ))
}

pub(crate) fn lag_window_values(
    gamma: &[f64],
    kernel: LagKernel,
    truncation: usize,
    size: usize,
) -> alloc::vec::Vec<f64> {
    let mut buf = vec![Complex64::new(0.0, 0.0); size];
    buf[0].re = gamma[0];
    for h in 1..=truncation {
        let v = kernel.weight(h as f64 / truncation as f64) * gamma[h];
        buf[h % size].re += v;
        buf[(size - h % size) % size].re += v;
    }
    fft::forward(&mut buf);
    buf.into_iter().map(|z| z.re / (2.0 * PI)).collect()
}
