use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent when std is linked
use num_traits::Float;

use crate::factorization::{factorize, implied_autocovariance};
use crate::grid::FrequencyGrid;
use crate::rng::RngStream;
use crate::series::TimeSeries;
use crate::spectral::{EstimatorFamily, SpectralDensityEstimate};

/// Burn-in discarded before Models I and II are observed.
pub const MODEL_BURN_IN: usize = 1000;

/// Grid on which the true autocovariances of the ARMA models are computed.
pub const TRUTH_GRID: usize = 1 << 15;

/// The three data-generating processes of the simulation design.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ModelId {
    /// `X_t = 0.9 X_{t−1} + ε_t`.
    I,
    /// ARMA(4, 2) with a sharp spectral peak near `λ = 1.5`.
    II,
    /// `X_t = Σ_{k=0}^{10} C(10, k)(−1)^k ε_{t−k}`, spectral zero at `λ = 0`.
    III,
}

impl ModelId {
    pub const ALL: [ModelId; 3] = [ModelId::I, ModelId::II, ModelId::III];

    pub fn name(self) -> &'static str {
        match self {
            ModelId::I => "I",
            ModelId::II => "II",
            ModelId::III => "III",
        }
    }

    pub(crate) fn code(self) -> u64 {
        match self {
            ModelId::I => 1,
            ModelId::II => 2,
            ModelId::III => 3,
        }
    }

    /// AR coefficients `φ_1..φ_p` of `X_t = Σ φ_j X_{t−j} + …`.
    pub fn ar(self) -> Vec<f64> {
        match self {
            ModelId::I => vec![0.9],
            ModelId::II => vec![1.34, -1.88, 1.32, -0.8],
            ModelId::III => vec![],
        }
    }

    /// MA coefficients `θ_0 = 1, θ_1, …`.
    pub fn ma(self) -> Vec<f64> {
        match self {
            ModelId::I => vec![1.0],
            ModelId::II => vec![1.0, 0.71, 0.25],
            ModelId::III => {
                let mut c = vec![1.0];
                for k in 1..=10 {
                    let prev: f64 = c[k - 1];
                    c.push(-prev * (11 - k) as f64 / k as f64);
                }
                c
            }
        }
    }

    /// `f(λ) = (2π)⁻¹ |θ(e^{−iλ})|² / |φ(e^{−iλ})|²` for unit innovation variance.
    pub fn density(self, grid: FrequencyGrid) -> SpectralDensityEstimate {
        let ar = self.ar();
        let ma = self.ma();
        let values = grid
            .frequencies()
            .map(|l| {
                let z = |k: usize| Complex64::from_polar(1.0, -(k as f64) * l);
                let num: Complex64 = ma.iter().enumerate().map(|(k, c)| z(k) * c).sum();
                let den: Complex64 = Complex64::new(1.0, 0.0) - ar.iter().enumerate().map(|(k, p)| z(k + 1) * p).sum::<Complex64>();
                num.norm_sqr() / den.norm_sqr() / (2.0 * PI)
            })
            .collect::<Vec<f64>>();
        // Rounding in the complex sums can break exact mirror symmetry.
        let n = grid.len();
        let sym = (0..n).map(|j| 0.5 * (values[j] + values[(n - j) % n])).collect();
        SpectralDensityEstimate::unfloored(grid, sym, EstimatorFamily::Exact).expect("symmetrized model density")
    }

    /// True autocovariances `γ(0..=maxlag)`.
    ///
    /// Model III by direct convolution of its finite filter; Models I and II
    /// from the factorization of the exact density on a `2^15` grid.
    pub fn autocovariances(self, maxlag: usize) -> Vec<f64> {
        match self {
            ModelId::III => {
                let c = self.ma();
                (0..=maxlag)
                    .map(|h| if h < c.len() { c[..c.len() - h].iter().zip(&c[h..]).map(|(a, b)| a * b).sum() } else { 0.0 })
                    .collect()
            }
            _ => {
                let grid = FrequencyGrid::new(TRUTH_GRID).expect("valid grid");
                let w = factorize(&self.density(grid), None).expect("ARMA density is positive");
                implied_autocovariance(&w, maxlag)
            }
        }
    }
}

/// A model observed over `n` time points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelSpec {
    pub id: ModelId,
    pub n: usize,
}

impl ModelSpec {
    /// # Panics
    /// When `n < 32`.
    pub fn new(id: ModelId, n: usize) -> Self {
        assert!(n >= 32, "model series need n >= 32");
        Self { id, n }
    }
}

/// Student-t(3) draw scaled to unit variance: `Z₀ / √(Z₁² + Z₂² + Z₃²)`.
pub fn unit_t3(rng: &mut RngStream) -> f64 {
    let z0 = rng.standard_normal();
    let chi: f64 = (0..3).map(|_| rng.standard_normal().powi(2)).sum();
    z0 / chi.sqrt()
}

pub fn simulate_model(spec: &ModelSpec, rng: &mut RngStream) -> TimeSeries {
    let ar = spec.id.ar();
    let ma = spec.id.ma();
    let burn = if ar.is_empty() { 0 } else { MODEL_BURN_IN };
    let q = ma.len() - 1;
    let total = burn + spec.n;
    let eps: Vec<f64> = (0..total + q).map(|_| unit_t3(rng)).collect();
    let mut x = vec![0.0; total];
    for t in 0..total {
        let mut v: f64 = ma.iter().enumerate().map(|(k, c)| c * eps[t + q - k]).sum();
        for (j, p) in ar.iter().enumerate() {
            if t > j {
                v += p * x[t - 1 - j];
            }
        }
        x[t] = v;
    }
    TimeSeries::new(x.split_off(burn)).expect("finite model path")
}

/// True lag-2 autocorrelation.
pub fn true_rho2(id: ModelId) -> f64 {
    let g = id.autocovariances(2);
    g[2] / g[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fft;
    use crate::statistics::sample_autocorrelation;

    #[test]
    fn binomial_filter() {
        let c = ModelId::III.ma();
        assert_eq!(c.len(), 11);
        assert_eq!(c[5], -252.0);
        assert_eq!(c[10], 1.0);
        assert_eq!(c.iter().sum::<f64>(), 0.0);
    }

    #[test]
    fn model_one_truth() {
        assert!((true_rho2(ModelId::I) - 0.81).abs() < 1e-10);
    }

    #[test]
    fn model_three_truth_by_binomial_identities() {
        // Σ_k C(10,k)C(10,k+2)(−1)^{2k+2} = C(20,8); Σ_k C(10,k)² = C(20,10).
        assert!((true_rho2(ModelId::III) - 125_970.0 / 184_756.0).abs() < 1e-14);
    }

    #[test]
    fn model_two_truth_by_inverse_transform() {
        let grid = FrequencyGrid::new(TRUTH_GRID).unwrap();
        let f = ModelId::II.density(grid);
        let mut buf: Vec<Complex64> = f.values().iter().map(|&v| Complex64::new(v, 0.0)).collect();
        fft::inverse(&mut buf);
        let scale = 2.0 * PI / TRUTH_GRID as f64;
        let rho2 = buf[2].re * scale / (buf[0].re * scale);
        assert!((true_rho2(ModelId::II) - rho2).abs() < 1e-9);
    }

    #[test]
    fn model_one_long_path() {
        let x = simulate_model(&ModelSpec::new(ModelId::I, 1_000_000), &mut RngStream::new(77, 0));
        assert!((sample_autocorrelation(&x, 1).unwrap() - 0.9).abs() < 0.01);
    }

    #[test]
    fn model_three_zero_at_origin() {
        let f = ModelId::III.density(FrequencyGrid::new(64).unwrap());
        assert!(f.at_zero() < 1e-20);
        let x = simulate_model(&ModelSpec::new(ModelId::III, 4096), &mut RngStream::new(3, 0));
        // Telescoping filter: the mean is a boundary sum of 20 innovations.
        assert!(x.mean().abs() < 2000.0 / 4096.0);
    }

    #[test]
    fn t3_innovations_have_unit_variance() {
        let mut rng = RngStream::new(5, 0);
        let n = 200_000;
        let draws: Vec<f64> = (0..n).map(|_| unit_t3(&mut rng)).collect();
        let m = draws.iter().sum::<f64>() / n as f64;
        // Infinite fourth moment: compare the median absolute value instead of the variance.
        let mut abs: Vec<f64> = draws.iter().map(|v| v.abs()).collect();
        abs.sort_by(f64::total_cmp);
        // Median of |t_3| is 0.764892..; scaled by 1/√3.
        assert!((abs[n / 2] - 0.764_892_328_404_345 / 3f64.sqrt()).abs() < 0.01);
        assert!(m.abs() < 0.02);
    }

    #[test]
    #[should_panic]
    fn short_specs_rejected() {
        let _ = ModelSpec::new(ModelId::I, 31);
    }
}
