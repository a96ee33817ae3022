//! Spectral density estimators whose output is bounded below and
//! mirror-symmetric on the grid, ready for factorization.

mod autoregressive;
mod cepstrum;
mod estimate;
mod estimator;
mod lag_window;
mod periodogram;
mod prewhiten;
mod smoothed;
mod truncation;

pub use autoregressive::{
    ar_spectral_estimate, default_max_order, fit_autoregression, select_order_aic, ArFit,
    OrderSelection,
};
pub use cepstrum::{cepstral_threshold_estimate, default_cepstral_threshold};
pub use estimate::{
    positivity_floor, EstimatorFamily, LagKernel, SpectralDensityEstimate, Tuning, ABSOLUTE_FLOOR,
    RELATIVE_FLOOR,
};
pub use estimator::Estimator;
pub use lag_window::lag_window_estimate;
pub use periodogram::{fourier_ordinates, periodogram};
pub use prewhiten::{prewhitened_estimate, PrewhitenedEstimate};
pub use smoothed::{
    crossvalidate_bandwidth, default_bandwidths, smoothed_periodogram, Bandwidth, Smoother,
};
pub use truncation::politis_truncation;

use crate::error::{Error, Result};

/// Zero variance relative to the magnitude of the data.
pub(crate) fn check_variance(x: &[f64], gamma0: f64) -> Result<()> {
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if !(gamma0 > (1e-14 * scale) * (1e-14 * scale)) || gamma0 == 0.0 {
        return Err(Error::DegenerateSeries);
    }
    Ok(())
}
