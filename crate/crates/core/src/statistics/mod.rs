//! Statistics whose sampling distributions are bootstrapped, and their
//! studentizations.

mod gencov;
mod normal;
mod studentize;

pub use gencov::{
    derived_series, generalized_autocovariance, generalized_mean_statistic, Combiner, LagWeight,
    WeightSequence, WeightedCovarianceSpec,
};
pub use normal::{normal_cdf, normal_quantile};
pub use studentize::{
    bartlett_se_autocorrelation, studentize_mean, tau_squared, Studentizer, DEFAULT_DELTA,
    DEFAULT_TAU_FLOOR,
};

use alloc::format;
use alloc::string::String;

use crate::error::{Error, Result};
use crate::series::mean;

pub fn sample_mean(x: &[f64]) -> f64 {
    mean(x)
}

/// `γ̂(h) = n⁻¹ Σ_{t=1}^{n−h} (x_t − x̄)(x_{t+h} − x̄)`.
pub fn sample_autocovariance(x: &[f64], h: usize) -> Result<f64> {
    if h >= x.len() {
        return Err(Error::InvalidParameter("lag must be below the series length"));
    }
    let m = mean(x);
    let n = x.len();
    Ok((0..n - h).map(|t| (x[t] - m) * (x[t + h] - m)).sum::<f64>() / n as f64)
}

/// `ρ̂(h) = γ̂(h)/γ̂(0)`.
pub fn sample_autocorrelation(x: &[f64], h: usize) -> Result<f64> {
    let g0 = sample_autocovariance(x, 0)?;
    if g0 == 0.0 {
        return Err(Error::ZeroVariance);
    }
    if h == 0 {
        return Ok(1.0);
    }
    Ok(sample_autocovariance(x, h)? / g0)
}

/// Statistic of a series, together with its value in a model world.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "kebab-case"))]
pub enum Statistic {
    Mean,
    Autocovariance { lag: usize },
    Autocorrelation { lag: usize },
    Generalized { spec: WeightedCovarianceSpec },
}

impl Statistic {
    pub fn id(&self) -> String {
        match self {
            Statistic::Mean => "mean".into(),
            Statistic::Autocovariance { lag } => format!("gamma{lag}"),
            Statistic::Autocorrelation { lag } => format!("rho{lag}"),
            Statistic::Generalized { .. } => "gencov".into(),
        }
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        match self {
            Statistic::Mean => Ok(sample_mean(x)),
            Statistic::Autocovariance { lag } => sample_autocovariance(x, *lag),
            Statistic::Autocorrelation { lag } => sample_autocorrelation(x, *lag),
            Statistic::Generalized { spec } => generalized_autocovariance(x, spec),
        }
    }

    /// Largest autocovariance lag [`Statistic::population`] reads.
    pub fn max_lag(&self) -> usize {
        match self {
            Statistic::Mean => 0,
            Statistic::Autocovariance { lag } | Statistic::Autocorrelation { lag } => *lag,
            Statistic::Generalized { spec } => spec.max_lag(),
        }
    }

    /// Value for a process with mean `mu` and autocovariances `gamma[0..=max_lag]`.
    pub fn population(&self, mu: f64, gamma: &[f64]) -> Result<f64> {
        let g = |h: usize| gamma.get(h).copied().unwrap_or(0.0);
        match self {
            Statistic::Mean => Ok(mu),
            Statistic::Autocovariance { lag } => Ok(g(*lag)),
            Statistic::Autocorrelation { lag } => {
                if g(0) == 0.0 {
                    return Err(Error::ZeroVariance);
                }
                Ok(g(*lag) / g(0))
            }
            Statistic::Generalized { spec } => spec.population(gamma),
        }
    }

    /// Single weight sequence and combiner slope when the statistic is a `P = 1`
    /// generalized autocovariance.
    pub(crate) fn linear_form(&self, x: &[f64]) -> Option<Result<(WeightSequence, f64)>> {
        match self {
            Statistic::Autocovariance { lag } => {
                Some(Ok((WeightSequence::new(alloc::vec![LagWeight { lag: *lag as i64, weight: 1.0 }]), 1.0)))
            }
            Statistic::Generalized { spec } if spec.weights.len() == 1 => Some(
                spec.components(x)
                    .and_then(|t| spec.combiner.gradient(&t))
                    .map(|grad| (spec.weights[0].clone(), grad[0])),
            ),
            _ => None,
        }
    }
}
