use alloc::vec::Vec;

#[allow(unused_imports)] // inherent when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;

/// Relative part of the positivity floor, as a fraction of the peak value.
pub const RELATIVE_FLOOR: f64 = 1e-6;
/// Absolute lower bound of the positivity floor.
pub const ABSOLUTE_FLOOR: f64 = 1e-12;

/// Where a density on the grid came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum EstimatorFamily {
    /// A known population density (for example a simulation model).
    Exact,
    /// Values supplied from outside, e.g. read from a spectrum file.
    External,
    /// Obtained by evaluating a Wold model on the grid.
    Reconstructed,
    PeriodogramRaw,
    LagWindow,
    SmoothedPeriodogram,
    ArParametric,
    PreWhitened,
    CepstralThreshold,
}

/// Lag-window kernels `w(u)` on `|u| ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum LagKernel {
    Bartlett,
    /// Flat-top: one on `|u| ≤ 1/2`, linear down to zero at `|u| = 1`.
    Trapezoid,
    /// `exp(-9u²/2)`, i.e. a Gaussian with standard deviation a third of the truncation.
    Gaussian,
}

impl LagKernel {
    pub fn weight(self, u: f64) -> f64 {
        let u = u.abs();
        if u > 1.0 {
            return 0.0;
        }
        match self {
            LagKernel::Bartlett => 1.0 - u,
            LagKernel::Trapezoid => {
                if u <= 0.5 {
                    1.0
                } else {
                    2.0 * (1.0 - u)
                }
            }
            LagKernel::Gaussian => (-4.5 * u * u).exp(),
        }
    }
}

/// Tuning parameters that produced an estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Tuning {
    None,
    LagWindow { kernel: LagKernel, truncation: usize },
    Smoothed { bandwidth: f64 },
    Ar { order: usize },
    PreWhitened { order: usize, bandwidth: f64 },
    CepstralThreshold { threshold: f64, retained: usize },
}

/// Strictly positive spectral density values on a symmetric Fourier grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDensityEstimate {
    grid: FrequencyGrid,
    values: Vec<f64>,
    family: EstimatorFamily,
    tuning: Tuning,
    floor: f64,
}

impl SpectralDensityEstimate {
    /// Symmetrizes `values` and clamps them at `max(1e-6·max, 1e-12)`.
    pub fn floored(
        grid: FrequencyGrid,
        mut values: Vec<f64>,
        family: EstimatorFamily,
        tuning: Tuning,
    ) -> Self {
        assert_eq!(values.len(), grid.len(), "values must cover the grid");
        symmetrize(&mut values);
        let floor = positivity_floor(&values);
        for v in &mut values {
            if !(*v >= floor) {
                *v = floor;
            }
        }
        Self { grid, values, family, tuning, floor }
    }

    /// Wraps values as given. They must be finite and mirror-symmetric; they
    /// are not clamped, so zeros survive (factorization rejects them later).
    pub fn unfloored(grid: FrequencyGrid, values: Vec<f64>, family: EstimatorFamily) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidParameter("density length differs from grid size"));
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonPositiveDensity { index, value });
        }
        let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for j in 1..grid.len() / 2 {
            if (values[j] - values[grid.mirror(j)]).abs() > 1e-9 * scale.max(1e-300) {
                return Err(Error::InvalidParameter("density is not mirror-symmetric"));
            }
        }
        Ok(Self { grid, values, family, tuning: Tuning::None, floor: 0.0 })
    }

    pub fn grid(&self) -> FrequencyGrid {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn family(&self) -> EstimatorFamily {
        self.family
    }

    pub fn tuning(&self) -> Tuning {
        self.tuning
    }

    /// Clamp value applied by the estimator, zero when none was applied.
    pub fn floor(&self) -> f64 {
        self.floor
    }

    pub fn at_zero(&self) -> f64 {
        self.values[0]
    }

    /// Autocovariances `(2π/N) Σ_j f(λ_j) cos(hλ_j)` for `h = 0..=maxlag`.
    ///
    /// Lags beyond `N/2` alias, so `maxlag` is capped there.
    pub fn autocovariances(&self, maxlag: usize) -> Vec<f64> {
        let n = self.grid.len();
        let mut buf = crate::fft::forward_real(&self.values);
        let scale = 2.0 * core::f64::consts::PI / n as f64;
        buf.truncate(maxlag.min(n / 2) + 1);
        // Real symmetric input, so the forward transform equals the inverse.
        buf.iter().map(|z| z.re * scale).collect()
    }
}

/// `max(1e-6 · max(values), 1e-12)`.
pub fn positivity_floor(values: &[f64]) -> f64 {
    let peak = values.iter().copied().filter(|v| v.is_finite()).fold(0.0f64, f64::max);
    (RELATIVE_FLOOR * peak).max(ABSOLUTE_FLOOR)
}

fn symmetrize(values: &mut [f64]) {
    let n = values.len();
    for j in 1..n / 2 {
        let avg = 0.5 * (values[j] + values[n - j]);
        values[j] = avg;
        values[n - j] = avg;
    }
}
