use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // inherent when std is linked
use num_traits::Float;

use super::periodogram::fourier_ordinates;
use super::{check_variance, EstimatorFamily, SpectralDensityEstimate, Tuning};
use crate::error::{Error, Result};
use crate::factorization::dot;
use crate::grid::FrequencyGrid;

/// Fixed bandwidth or data-driven choice by leave-one-out cross-validation.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Bandwidth {
    Fixed(f64),
    /// Cross-validate over the given candidates, or [`default_bandwidths`] when empty.
    CrossValidated(Vec<f64>),
}

impl Default for Bandwidth {
    fn default() -> Self {
        Bandwidth::CrossValidated(Vec::new())
    }
}

/// Gaussian-kernel (Nadaraya–Watson) smoother of the periodogram ordinates at
/// the Fourier frequencies `2πj/n`, using circular distances on `[0, 2π)`.
///
/// The ordinate at frequency zero vanishes after centering and is excluded.
#[derive(Debug, Clone)]
pub struct Smoother {
    ordinates: Vec<f64>,
    bandwidth: f64,
}

fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).abs() % (2.0 * PI);
    d.min(2.0 * PI - d)
}

impl Smoother {
    pub fn new(x: &[f64], bandwidth: f64) -> Result<Self> {
        if !(bandwidth > 0.0) {
            return Err(Error::InvalidParameter("bandwidth must be positive"));
        }
        if x.len() < 4 {
            return Err(Error::SeriesTooShort { len: x.len(), min: 4 });
        }
        Ok(Self { ordinates: fourier_ordinates(x), bandwidth })
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    /// Smoothed value at an arbitrary frequency.
    pub fn at(&self, lambda: f64) -> f64 {
        let n = self.ordinates.len();
        let step = 2.0 * PI / n as f64;
        let two_h2 = 2.0 * self.bandwidth * self.bandwidth;
        let wrapped = lambda % (2.0 * PI);
        let pos = (if wrapped < 0.0 { wrapped + 2.0 * PI } else { wrapped }) / step;
        let nearest = pos.round();
        let delta = (pos - nearest) * step;
        let i0 = nearest as usize % n;

        // Walk outwards from the nearest ordinate in both directions, staying
        // within circular distance π. Successive Gaussian weight ratios form a
        // geometric sequence, so each step is two multiplications.
        let q = (-step * step / two_h2 * 2.0).exp();
        let (right_steps, left_steps) = if delta >= 0.0 { (n / 2, (n - 1) / 2) } else { ((n - 1) / 2, n / 2) };
        let mut num = 0.0;
        let mut den = 0.0;
        let mut add = |i: usize, w: f64| {
            if i != 0 {
                num += w * self.ordinates[i];
                den += w;
            }
        };
        let mut w = 1.0;
        let mut ratio = (-(step * step - 2.0 * delta * step) / two_h2).exp();
        add(i0, w);
        let mut i = i0;
        for _ in 0..right_steps {
            w *= ratio;
            ratio *= q;
            i = if i + 1 == n { 0 } else { i + 1 };
            add(i, w);
        }
        let mut w = 1.0;
        let mut ratio = (-(step * step + 2.0 * delta * step) / two_h2).exp();
        let mut i = i0;
        for _ in 0..left_steps {
            w *= ratio;
            ratio *= q;
            i = if i == 0 { n - 1 } else { i - 1 };
            add(i, w);
        }
        if den > 1e-250 {
            num / den
        } else {
            self.at_direct(lambda)
        }
    }

    /// Reference evaluation with one exponential per ordinate; weights are
    /// taken relative to the nearest included ordinate so tiny bandwidths do
    /// not underflow.
    fn at_direct(&self, lambda: f64) -> f64 {
        let n = self.ordinates.len();
        let step = 2.0 * PI / n as f64;
        let two_h2 = 2.0 * self.bandwidth * self.bandwidth;
        let dmin = (1..n)
            .map(|i| circular_distance(lambda, step * i as f64))
            .fold(f64::INFINITY, f64::min);
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 1..n {
            let d = circular_distance(lambda, step * i as f64);
            let w = (-(d * d - dmin * dmin) / two_h2).exp();
            num += w * self.ordinates[i];
            den += w;
        }
        num / den
    }

    /// Values on every grid frequency.
    pub fn on_grid(&self, grid: FrequencyGrid) -> Vec<f64> {
        let n = grid.len();
        let mut values = vec![0.0; n];
        for j in 0..=n / 2 {
            values[j] = self.at(grid.frequency(j));
        }
        for j in n / 2 + 1..n {
            values[j] = values[n - j];
        }
        values
    }
}

/// Periodogram smoothed with a normalized Gaussian kernel of the given bandwidth (radians).
pub fn smoothed_periodogram(
    x: &[f64],
    bandwidth: &Bandwidth,
    grid: FrequencyGrid,
) -> Result<SpectralDensityEstimate> {
    let h = match bandwidth {
        Bandwidth::Fixed(h) => *h,
        Bandwidth::CrossValidated(c) => crossvalidate_bandwidth(x, c)?,
    };
    let smoother = Smoother::new(x, h)?;
    let gamma0 = smoother.ordinates.iter().sum::<f64>() * 2.0 * PI / x.len() as f64;
    check_variance(x, gamma0)?;
    Ok(SpectralDensityEstimate::floored(
        grid,
        smoother.on_grid(grid),
        EstimatorFamily::SmoothedPeriodogram,
        Tuning::Smoothed { bandwidth: h },
    ))
}

/// Sixteen geometrically spaced bandwidths from `π/n` to `π`.
pub fn default_bandwidths(n: usize) -> Vec<f64> {
    let lo = PI / n as f64;
    let ratio = (n as f64).powf(1.0 / 15.0);
    (0..16).map(|i| lo * ratio.powi(i)).collect()
}

/// Candidate minimizing the leave-out Whittle score
/// `Σ_j [I(λ_j)/f̂_{-j}(λ_j) + log f̂_{-j}(λ_j)]`, `j = 1..=n/2`, where
/// `f̂_{-j}` omits both `λ_j` and its mirror `2π − λ_j` (equal ordinates).
/// Ties go to the earlier candidate.
pub fn crossvalidate_bandwidth(x: &[f64], candidates: &[f64]) -> Result<f64> {
    let defaults;
    let candidates = if candidates.is_empty() {
        defaults = default_bandwidths(x.len());
        &defaults[..]
    } else {
        candidates
    };
    if candidates.iter().any(|h| !(*h > 0.0)) {
        return Err(Error::InvalidParameter("bandwidth candidates must be positive"));
    }
    if candidates.len() == 1 {
        return Ok(candidates[0]);
    }
    let ordinates = fourier_ordinates(x);
    let n = ordinates.len();
    let step = 2.0 * PI / n as f64;
    let mut best = (f64::INFINITY, candidates[0]);
    let tail = &ordinates[1..];
    for &h in candidates {
        let two_h2 = 2.0 * h * h;
        let base = step * step;
        // Weight by circular index distance, relative to distance one, laid out
        // twice so `w(i - j)` over `i = 1..n` is one contiguous slice.
        let weights: Vec<f64> = (0..2 * n)
            .map(|t| {
                let d = t % n;
                let dist = step * d.min(n - d) as f64;
                (-(dist * dist - base) / two_h2).exp()
            })
            .collect();
        let total: f64 = weights[1..n].iter().sum::<f64>() + weights[0];
        let mut score = 0.0;
        for j in 1..=n / 2 {
            let mirror = n - j;
            let mut num = dot(&weights[n + 1 - j..2 * n - j], tail) - weights[0] * ordinates[j];
            // Σ_{i≥1} w(i − j), less the left-out ordinate itself.
            let mut den = total - weights[j] - weights[0];
            if mirror != j {
                let w = weights[mirror - j];
                num -= w * ordinates[mirror];
                den -= w;
            }
            let f = if den > 0.0 { (num / den).max(1e-300) } else { 1e-300 };
            score += ordinates[j] / f + f.ln();
        }
        if score < best.0 {
            best = (score, h);
        }
    }
    Ok(best.1)
}
