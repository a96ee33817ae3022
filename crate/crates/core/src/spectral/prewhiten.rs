use alloc::vec::Vec;

use super::autoregressive::{fit_autoregression, ArFit, OrderSelection};
use super::smoothed::{smoothed_periodogram, Bandwidth};
use super::{EstimatorFamily, SpectralDensityEstimate, Tuning};
use crate::error::Result;
use crate::factorization::{factorize_trimmed, WoldModel};
use crate::grid::FrequencyGrid;
use crate::series::TimeSeries;

/// AR-filtered smoothed-periodogram estimate together with its parts.
#[derive(Debug, Clone)]
pub struct PrewhitenedEstimate {
    pub estimate: SpectralDensityEstimate,
    pub ar: ArFit,
    /// Smoothed-periodogram estimate of the AR residuals.
    pub residual: SpectralDensityEstimate,
}

impl PrewhitenedEstimate {
    /// ARMA split: AR part from the fit, MA part and innovation variance from
    /// factorizing the residual spectrum.
    pub fn arma(&self) -> Result<(Vec<f64>, WoldModel)> {
        Ok((self.ar.coefficients.clone(), factorize_trimmed(&self.residual)?))
    }

    /// Estimate at frequency zero, `f̂_res(0) / |1 − Σφ̂_j|²`, before flooring.
    pub fn unfloored_at_zero(&self) -> f64 {
        self.residual.at_zero() / self.ar.power_transfer_at_zero()
    }
}

/// Fit AR with `order`, smooth the residual periodogram, recolor:
/// `f̂(λ) = f̂_res(λ) |1 − Σ φ̂_j e^{-ijλ}|^{-2}`, floored.
pub fn prewhitened_estimate(
    x: &TimeSeries,
    order: OrderSelection,
    bandwidth: &Bandwidth,
    grid: FrequencyGrid,
) -> Result<PrewhitenedEstimate> {
    x.require_len(32)?;
    prewhiten_slice(x.values(), order, bandwidth, grid)
}

pub(crate) fn prewhiten_slice(
    x: &[f64],
    order: OrderSelection,
    bandwidth: &Bandwidth,
    grid: FrequencyGrid,
) -> Result<PrewhitenedEstimate> {
    let ar = fit_autoregression(x, order)?;
    let residual = smoothed_periodogram(&ar.residuals, bandwidth, grid)?;
    let bw = match residual.tuning() {
        Tuning::Smoothed { bandwidth } => bandwidth,
        _ => unreachable!("smoothed periodogram records its bandwidth"),
    };
    let values = residual
        .values()
        .iter()
        .zip(ar.power_transfer(grid))
        .map(|(r, t)| r / t)
        .collect();
    let estimate = SpectralDensityEstimate::floored(
        grid,
        values,
        EstimatorFamily::PreWhitened,
        Tuning::PreWhitened { order: ar.order(), bandwidth: bw },
    );
    Ok(PrewhitenedEstimate { estimate, ar, residual })
}
