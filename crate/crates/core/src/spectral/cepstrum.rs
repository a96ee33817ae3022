use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent when std is linked
use num_traits::Float;

use super::estimate::positivity_floor;
use super::periodogram::fourier_ordinates;
use super::{check_variance, EstimatorFamily, SpectralDensityEstimate, Tuning};
use crate::error::Result;
use crate::fft;
use crate::grid::FrequencyGrid;
use crate::series::TimeSeries;

/// `2·√(2/n)`.
pub fn default_cepstral_threshold(n: usize) -> f64 {
    2.0 * (2.0 / n as f64).sqrt()
}

/// Cepstrum thresholding: raw cepstrum of the log of the floored periodogram at
/// the Fourier frequencies of `x`, coefficients `|â_k| < threshold` (`k ≥ 1`)
/// set to zero, then `f̂(λ) = exp(Σ_k â_k e^{ikλ})` on the grid.
///
/// The zero-frequency ordinate (identically zero after centering) is replaced
/// by its neighbour before taking logs.
pub fn cepstral_threshold_estimate(
    x: &TimeSeries,
    threshold: Option<f64>,
    grid: FrequencyGrid,
) -> Result<SpectralDensityEstimate> {
    x.require_len(32)?;
    let n = x.len();
    let threshold = threshold.unwrap_or_else(|| default_cepstral_threshold(n));
    let mut ordinates = fourier_ordinates(x);
    check_variance(x, ordinates.iter().sum::<f64>() * 2.0 * core::f64::consts::PI / n as f64)?;
    ordinates[0] = ordinates[1];
    let floor = positivity_floor(&ordinates);
    let logs: Vec<f64> = ordinates.iter().map(|v| v.max(floor).ln()).collect();
    let mut cep: Vec<f64> = fft::forward_real(&logs).iter().map(|z| z.re / n as f64).collect();

    let half = n / 2;
    let mut retained = 0;
    for k in 1..=half {
        if cep[k].abs() < threshold {
            cep[k] = 0.0;
        } else {
            retained += 1;
        }
    }

    // Symmetric trigonometric polynomial with n terms, folded onto the grid.
    let size = grid.len();
    let mut buf = vec![Complex64::new(0.0, 0.0); size];
    buf[0].re += cep[0];
    for k in 1..=half {
        if n.is_multiple_of(2) && k == half {
            buf[k % size].re += cep[k];
        } else {
            buf[k % size].re += cep[k];
            buf[(size - k % size) % size].re += cep[k];
        }
    }
    fft::forward(&mut buf);
    let values = buf.into_iter().map(|z| z.re.exp()).collect();
    Ok(SpectralDensityEstimate::floored(
        grid,
        values,
        EstimatorFamily::CepstralThreshold,
        Tuning::CepstralThreshold { threshold, retained },
    ))
}
