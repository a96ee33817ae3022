use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // inherent when std is linked
use num_traits::Float;

use super::{check_variance, EstimatorFamily, SpectralDensityEstimate, Tuning};
use crate::error::{Error, Result};
use crate::factorization::transfer;
use crate::fft;
use crate::grid::FrequencyGrid;
use crate::series::{autocovariances, centered};

/// How the autoregressive order is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum OrderSelection {
    Fixed(usize),
    /// AIC over `0..=max` (default maximum when `None`).
    Aic(Option<usize>),
}

impl Default for OrderSelection {
    fn default() -> Self {
        OrderSelection::Aic(None)
    }
}

/// Yule–Walker fit `X_t − x̄ = Σ φ_j (X_{t−j} − x̄) + e_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArFit {
    pub coefficients: Vec<f64>,
    /// Levinson prediction-error variance.
    pub sigma2: f64,
    /// `e_t` for `t = p+1..=n`.
    pub residuals: Vec<f64>,
    pub mean: f64,
}

impl ArFit {
    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    /// `|1 − Σ φ_j e^{-ijλ}|²` on the grid.
    pub fn power_transfer(&self, grid: FrequencyGrid) -> Vec<f64> {
        transfer(&self.polynomial(), grid).into_iter().map(fft::norm_sqr).collect()
    }

    /// Coefficients of `1 − Σ φ_j z^j`.
    pub fn polynomial(&self) -> Vec<f64> {
        let mut p = Vec::with_capacity(self.order() + 1);
        p.push(1.0);
        p.extend(self.coefficients.iter().map(|v| -v));
        p
    }

    /// `|1 − Σ φ_j|²`, the power transfer at frequency zero.
    pub fn power_transfer_at_zero(&self) -> f64 {
        let s = 1.0 - self.coefficients.iter().sum::<f64>();
        s * s
    }
}

/// `min(20, ⌈10·log10 n⌉)`, further capped below `n/2`.
pub fn default_max_order(n: usize) -> usize {
    let by_length = (10.0 * (n as f64).log10()).ceil() as usize;
    by_length.min(20).min((n - 1) / 2)
}

/// Levinson–Durbin on `γ(0..=pmax)`: coefficient vectors and innovation
/// variances for every order `0..=pmax`.
fn levinson(gamma: &[f64], pmax: usize) -> Vec<(Vec<f64>, f64)> {
    let mut out = Vec::with_capacity(pmax + 1);
    let mut phi: Vec<f64> = Vec::new();
    let mut v = gamma[0];
    out.push((phi.clone(), v));
    for k in 1..=pmax {
        let acc: f64 = gamma[k] - phi.iter().enumerate().map(|(j, p)| p * gamma[k - 1 - j]).sum::<f64>();
        let kappa = acc / v;
        let prev = phi.clone();
        phi.push(kappa);
        for j in 0..k - 1 {
            phi[j] = prev[j] - kappa * prev[k - 2 - j];
        }
        v *= 1.0 - kappa * kappa;
        if !(v > 0.0) {
            // Perfectly predictable at this order; higher orders add nothing.
            break;
        }
        out.push((phi.clone(), v));
    }
    out
}

fn aic_pick(path: &[(Vec<f64>, f64)], n: usize) -> usize {
    let mut best = (f64::INFINITY, 0);
    for (p, (_, v)) in path.iter().enumerate() {
        let aic = n as f64 * v.ln() + 2.0 * p as f64;
        if aic < best.0 {
            best = (aic, p);
        }
    }
    best.1
}

/// `argmin_p n·log σ̂²_p + 2p` over `p = 0..=pmax`, ties to the smaller order.
pub fn select_order_aic(x: &[f64], pmax: usize) -> Result<usize> {
    if 2 * pmax >= x.len() {
        return Err(Error::InvalidParameter("maximum AR order must be below n/2"));
    }
    let gamma = autocovariances(x, pmax);
    check_variance(x, gamma[0])?;
    Ok(aic_pick(&levinson(&gamma, pmax), x.len()))
}

/// Yule–Walker AR fit with the requested order rule.
pub fn fit_autoregression(x: &[f64], order: OrderSelection) -> Result<ArFit> {
    let n = x.len();
    let pmax = match order {
        OrderSelection::Fixed(p) => p,
        OrderSelection::Aic(max) => max.unwrap_or_else(|| default_max_order(n)),
    };
    if 2 * pmax >= n {
        return Err(Error::InvalidParameter("AR order must be below n/2"));
    }
    let gamma = autocovariances(x, pmax);
    check_variance(x, gamma[0])?;
    let path = levinson(&gamma, pmax);
    let p = match order {
        OrderSelection::Fixed(p) => p.min(path.len() - 1),
        OrderSelection::Aic(_) => aic_pick(&path, n),
    };
    let (coefficients, sigma2) = path[p].clone();
    let y = centered(x);
    let residuals = (p..n)
        .map(|t| y[t] - coefficients.iter().enumerate().map(|(j, c)| c * y[t - 1 - j]).sum::<f64>())
        .collect();
    Ok(ArFit { coefficients, sigma2, residuals, mean: x.iter().sum::<f64>() / n as f64 })
}

/// `f̂(λ) = σ̂²(2π)^{-1} |1 − Σ φ̂_j e^{-ijλ}|^{-2}` from a Yule–Walker fit.
pub fn ar_spectral_estimate(
    x: &[f64],
    order: OrderSelection,
    grid: FrequencyGrid,
) -> Result<(SpectralDensityEstimate, ArFit)> {
    let fit = fit_autoregression(x, order)?;
    let scale = fit.sigma2 / (2.0 * PI);
    let values = fit.power_transfer(grid).into_iter().map(|t| scale / t).collect();
    let est = SpectralDensityEstimate::floored(
        grid,
        values,
        EstimatorFamily::ArParametric,
        Tuning::Ar { order: fit.order() },
    );
    Ok((est, fit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::factorize;
    use crate::simharness::{simulate_model, ModelId, ModelSpec};
    use crate::RngStream;
    use alloc::vec;

    fn noise(n: usize, stream: u64) -> Vec<f64> {
        let mut rng = RngStream::new(11, stream);
        (0..n).map(|_| rng.standard_normal()).collect()
    }

    #[test]
    fn levinson_matches_direct_solve_for_order_two() {
        let gamma = [2.0, 1.2, 0.5];
        let path = levinson(&gamma, 2);
        // [[2, 1.2], [1.2, 2]] φ = [1.2, 0.5]
        let det = 4.0 - 1.44;
        let phi1 = (1.2 * 2.0 - 1.2 * 0.5) / det;
        let phi2 = (2.0 * 0.5 - 1.2 * 1.2) / det;
        assert!((path[2].0[0] - phi1).abs() < 1e-14);
        assert!((path[2].0[1] - phi2).abs() < 1e-14);
        let v = gamma[0] - phi1 * gamma[1] - phi2 * gamma[2];
        assert!((path[2].1 - v).abs() < 1e-14);
    }

    #[test]
    fn zero_max_order_gives_zero() {
        assert_eq!(select_order_aic(&noise(50, 0), 0).unwrap(), 0);
    }

    #[test]
    fn white_noise_mostly_order_zero() {
        let zeros = (0..100).filter(|&s| select_order_aic(&noise(512, s), 10).unwrap() == 0).count();
        assert!(zeros > 50, "{zeros}");
    }

    #[test]
    fn model_one_fit_is_persistent() {
        let mut phis = Vec::new();
        for s in 0..25 {
            let x = simulate_model(&ModelSpec::new(ModelId::I, 512), &mut RngStream::new(5, s));
            let fit = fit_autoregression(&x, OrderSelection::default()).unwrap();
            assert!(fit.order() >= 1 && fit.coefficients[0] > 0.0);
            phis.push(fit.coefficients[0]);
        }
        phis.sort_by(f64::total_cmp);
        assert!((phis[12] - 0.9).abs() < 0.1, "{}", phis[12]);
    }

    #[test]
    fn factorization_returns_fitted_coefficients() {
        let x = simulate_model(&ModelSpec::new(ModelId::II, 256), &mut RngStream::new(9, 1));
        let (f, fit) = ar_spectral_estimate(&x, OrderSelection::Fixed(4), FrequencyGrid::default()).unwrap();
        let w = factorize(&f, None).unwrap();
        for k in 1..200 {
            let expected = fit.coefficients.get(k - 1).copied().unwrap_or(0.0);
            assert!((w.ar()[k] - expected).abs() < 1e-8, "b_{k}");
        }
    }

    #[test]
    fn constant_series_is_degenerate() {
        assert_eq!(
            fit_autoregression(&vec![2.5; 40], OrderSelection::default()),
            Err(Error::DegenerateSeries)
        );
    }

    #[test]
    fn white_noise_estimate_is_flat() {
        let x = noise(4096, 3);
        let (f, fit) = ar_spectral_estimate(&x, OrderSelection::default(), FrequencyGrid::new(256).unwrap()).unwrap();
        let mean = f.values().iter().sum::<f64>() / 256.0;
        assert!((mean - 1.0 / (2.0 * PI)).abs() < 0.03);
        assert!(fit.order() <= 3);
        assert!(f.values().iter().all(|v| (v / mean - 1.0).abs() < 0.25));
    }
}
