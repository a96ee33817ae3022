use super::autoregressive::{ar_spectral_estimate, OrderSelection};
use super::cepstrum::cepstral_threshold_estimate;
use super::lag_window::lag_window_estimate;
use super::prewhiten::prewhitened_estimate;
use super::smoothed::{smoothed_periodogram, Bandwidth};
use super::truncation::politis_truncation;
use super::{LagKernel, SpectralDensityEstimate};
use crate::error::Result;
use crate::grid::FrequencyGrid;
use crate::series::TimeSeries;

/// A spectral estimator family together with its tuning rule.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "family", rename_all = "kebab-case"))]
pub enum Estimator {
    Ar {
        #[cfg_attr(feature = "serde", serde(default))]
        order: OrderSelection,
    },
    LagWindow {
        kernel: LagKernel,
        /// Data-driven when `None`: twice the Politis lag, capped at `n − 1`.
        #[cfg_attr(feature = "serde", serde(default))]
        truncation: Option<usize>,
    },
    Smoothed {
        #[cfg_attr(feature = "serde", serde(default))]
        bandwidth: Bandwidth,
    },
    PreWhitened {
        #[cfg_attr(feature = "serde", serde(default))]
        order: OrderSelection,
        #[cfg_attr(feature = "serde", serde(default))]
        bandwidth: Bandwidth,
    },
    Cepstrum {
        #[cfg_attr(feature = "serde", serde(default))]
        threshold: Option<f64>,
    },
}

impl Default for Estimator {
    /// AR(AIC) pre-whitening with a cross-validated smoothed residual periodogram.
    fn default() -> Self {
        Estimator::PreWhitened { order: OrderSelection::default(), bandwidth: Bandwidth::default() }
    }
}

impl Estimator {
    pub fn name(&self) -> &'static str {
        match self {
            Estimator::Ar { .. } => "ar",
            Estimator::LagWindow { .. } => "lag-window",
            Estimator::Smoothed { .. } => "smoothed",
            Estimator::PreWhitened { .. } => "prewhiten",
            Estimator::Cepstrum { .. } => "cepstrum",
        }
    }

    pub fn estimate(&self, x: &TimeSeries, grid: FrequencyGrid) -> Result<SpectralDensityEstimate> {
        match self {
            Estimator::Ar { order } => Ok(ar_spectral_estimate(x, *order, grid)?.0),
            Estimator::LagWindow { kernel, truncation } => {
                let t = match truncation {
                    Some(t) => *t,
                    None => (2 * politis_truncation(x)?).min(x.len() - 1),
                };
                lag_window_estimate(x, *kernel, t, grid)
            }
            Estimator::Smoothed { bandwidth } => smoothed_periodogram(x, bandwidth, grid),
            Estimator::PreWhitened { order, bandwidth } => {
                Ok(prewhitened_estimate(x, *order, bandwidth, grid)?.estimate)
            }
            Estimator::Cepstrum { threshold } => cepstral_threshold_estimate(x, *threshold, grid),
        }
    }
}
