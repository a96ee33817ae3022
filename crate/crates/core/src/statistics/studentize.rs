use core::f64::consts::PI;

#[allow(unused_imports)] // inherent when std is linked
use num_traits::Float;

use super::gencov::WeightSequence;
use super::Statistic;
use crate::bootstrap::kappa4_of;
use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;
use crate::series::{mean, TimeSeries};
use crate::spectral::{Estimator, SpectralDensityEstimate};

/// Lower bound `δ` on `f̂(0)` for the studentized mean.
pub const DEFAULT_DELTA: f64 = 1e-12;
/// Lower clamp on `τ̂²`.
pub const DEFAULT_TAU_FLOOR: f64 = 1e-8;

/// `√n (X̄ − center) / √(2π f̂(0))`.
pub fn studentize_mean(x: &[f64], f: &SpectralDensityEstimate, center: f64, delta: f64) -> Result<f64> {
    let f0 = f.at_zero();
    if !(f0 >= delta) {
        return Err(Error::FloorViolation { value: f0, bound: delta });
    }
    Ok((x.len() as f64).sqrt() * (mean(x) - center) / (2.0 * PI * f0).sqrt())
}

/// `√(w_hh / n)` with `w_hh = Σ_{k≥1} [ρ(k+h) + ρ(k−h) − 2ρ(h)ρ(k)]²`, where
/// `acf[k] = ρ(k)` and lags past the slice count as zero.
///
/// The sum stops once `ρ(k−h)`, `ρ(k)` and `ρ(k+h)` are all below `1e-10`
/// in magnitude, or at `k = 10n`.
pub fn bartlett_se_autocorrelation(acf: &[f64], h: usize, n: usize) -> f64 {
    if h == 0 {
        return 0.0;
    }
    let rho = |k: i64| acf.get(k.unsigned_abs() as usize).copied().unwrap_or(0.0);
    let hh = h as i64;
    let rh = rho(hh);
    let mut w = 0.0;
    for k in 1..=(10 * n) as i64 {
        let (a, b, c) = (rho(k + hh), rho(k - hh), rho(k));
        if k > hh && a.abs() < 1e-10 && b.abs() < 1e-10 && c.abs() < 1e-10 {
            break;
        }
        let term = a + b - 2.0 * rh * c;
        w += term * term;
    }
    (w / n as f64).sqrt()
}

/// `τ² = (κ₄/σ⁴ − 3)(∫ f D)² + 4π ∫ |f D|²` with `D(λ) = Σ_h d(h) e^{ihλ}`,
/// integrals by the rectangle rule on the grid of `f`, clamped below at `floor`.
pub fn tau_squared(f: &SpectralDensityEstimate, d: &WeightSequence, kappa4: f64, sigma2: f64, floor: f64) -> f64 {
    let grid = f.grid();
    let step = 2.0 * PI / grid.len() as f64;
    let mut first = 0.0;
    let mut second = 0.0;
    for (j, &fv) in f.values().iter().enumerate() {
        let lambda = grid.frequency(j);
        let (mut re, mut im) = (0.0, 0.0);
        for t in &d.terms {
            let (s, c) = (t.lag as f64 * lambda).sin_cos();
            re += t.weight * c;
            im += t.weight * s;
        }
        first += fv * re;
        second += fv * fv * (re * re + im * im);
    }
    first *= step;
    second *= step;
    let tau2 = (kappa4 / (sigma2 * sigma2) - 3.0) * first * first + 4.0 * PI * second;
    tau2.max(floor)
}

/// Plug-in standard errors of statistics, driven by one spectral estimator.
///
/// Mean: `√(2π f̂(0)/n)`. Autocorrelation: Bartlett's formula on the
/// autocorrelations of `f̂`. Single-sequence generalized autocovariances:
/// `|g'(T̂)| √(τ̂²/n)` with `κ̂₄` from AR residuals.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Studentizer {
    pub estimator: Estimator,
    pub grid: FrequencyGrid,
    pub delta: f64,
    pub tau_floor: f64,
}

impl Studentizer {
    pub const DEFAULT_GRID: usize = 1024;
    /// Grid used for the mean, which only reads the estimate at frequency zero.
    pub const MEAN_GRID: usize = 64;

    pub fn new(estimator: Estimator) -> Self {
        Self {
            estimator,
            grid: FrequencyGrid::new(Self::DEFAULT_GRID).expect("valid grid size"),
            delta: DEFAULT_DELTA,
            tau_floor: DEFAULT_TAU_FLOOR,
        }
    }

    pub fn with_grid(mut self, grid: FrequencyGrid) -> Self {
        self.grid = grid;
        self
    }

    pub fn standard_error(&self, statistic: &Statistic, x: &TimeSeries) -> Result<f64> {
        let n = x.len();
        match statistic {
            Statistic::Mean => {
                // Only f̂(0) is needed, and it does not depend on the grid size
                // beyond the floor reference, so a coarse grid suffices.
                let coarse = FrequencyGrid::new(self.grid.len().min(Self::MEAN_GRID)).expect("valid grid size");
                let f = self.estimator.estimate(x, coarse)?;
                let f0 = f.at_zero();
                if !(f0 >= self.delta) {
                    return Err(Error::FloorViolation { value: f0, bound: self.delta });
                }
                Ok((2.0 * PI * f0 / n as f64).sqrt())
            }
            Statistic::Autocorrelation { lag } => {
                let f = self.estimator.estimate(x, self.grid)?;
                let maxlag = (10 * n + lag).min(self.grid.len() / 2);
                let gamma = f.autocovariances(maxlag);
                let acf: alloc::vec::Vec<f64> = gamma.iter().map(|g| g / gamma[0]).collect();
                Ok(bartlett_se_autocorrelation(&acf, *lag, n))
            }
            other => match other.linear_form(x) {
                Some(form) => {
                    let (d, slope) = form?;
                    let f = self.estimator.estimate(x, self.grid)?;
                    let m = kappa4_of(x)?;
                    let tau2 = tau_squared(&f, &d, m.kappa4, m.sigma2, self.tau_floor);
                    Ok(slope.abs() * (tau2 / n as f64).sqrt())
                }
                None => Err(Error::InvalidParameter("studentization needs a single weight sequence")),
            },
        }
    }
}
