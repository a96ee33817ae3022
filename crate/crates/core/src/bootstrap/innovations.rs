use alloc::vec::Vec;

#[allow(unused_imports)] // inherent when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::series::{mean, TimeSeries};
use crate::spectral::{fit_autoregression, OrderSelection};

/// Which law pseudo-innovations follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum InnovationKind {
    #[default]
    Gaussian,
    /// Discrete law on `{−σ√κ, 0, σ√κ}` matching variance and fourth moment.
    ThreePoint,
    /// Resampling of centered AR residuals.
    Empirical,
}

/// I.i.d. pseudo-innovation law.
#[derive(Debug, Clone, PartialEq)]
pub enum InnovationGenerator {
    Gaussian { sigma2: f64 },
    /// `P(±σ√κ) = 1/(2κ)`, `P(0) = 1 − 1/κ` with `κ = κ̃₄` the standardized fourth moment.
    ThreePoint { sigma2: f64, kappa4: f64 },
    Empirical { pool: Vec<f64> },
}

impl InnovationGenerator {
    pub fn gaussian(sigma2: f64) -> Self {
        InnovationGenerator::Gaussian { sigma2 }
    }

    pub fn three_point(sigma2: f64, kappa4: f64) -> Result<Self> {
        if !(kappa4 >= 1.0) || !kappa4.is_finite() {
            return Err(Error::InvalidKurtosis(kappa4));
        }
        Ok(InnovationGenerator::ThreePoint { sigma2, kappa4 })
    }

    /// Centers the pool.
    pub fn empirical(residuals: &[f64]) -> Result<Self> {
        if residuals.is_empty() {
            return Err(Error::InvalidParameter("empty residual pool"));
        }
        let m = mean(residuals);
        Ok(InnovationGenerator::Empirical { pool: residuals.iter().map(|r| r - m).collect() })
    }

    /// Target variance, when the law is parametrized by one.
    pub fn sigma2(&self) -> Option<f64> {
        match self {
            InnovationGenerator::Gaussian { sigma2 } | InnovationGenerator::ThreePoint { sigma2, .. } => {
                Some(*sigma2)
            }
            InnovationGenerator::Empirical { .. } => None,
        }
    }

    /// Support points and probabilities of the three-point law.
    pub fn three_point_table(sigma2: f64, kappa4: f64) -> [(f64, f64); 3] {
        let a = (sigma2 * kappa4).sqrt();
        let p = 1.0 / (2.0 * kappa4);
        [(-a, p), (0.0, 1.0 - 2.0 * p), (a, p)]
    }

    pub fn draw(&self, rng: &mut RngStream) -> f64 {
        match self {
            InnovationGenerator::Gaussian { sigma2 } => sigma2.sqrt() * rng.standard_normal(),
            InnovationGenerator::ThreePoint { sigma2, kappa4 } => {
                let u = rng.uniform();
                let p = 0.5 / kappa4;
                if u < p {
                    (sigma2 * kappa4).sqrt()
                } else if u < 2.0 * p {
                    -(sigma2 * kappa4).sqrt()
                } else {
                    0.0
                }
            }
            InnovationGenerator::Empirical { pool } => pool[rng.below(pool.len())],
        }
    }

    pub(crate) fn check_variance(&self, model_sigma2: f64) -> Result<()> {
        match self.sigma2() {
            Some(s) if (s - model_sigma2).abs() > 1e-9 * model_sigma2.abs() => {
                Err(Error::VarianceMismatch { generator: s, model: model_sigma2 })
            }
            _ => Ok(()),
        }
    }
}

/// `n` i.i.d. draws from the generator.
pub fn gen_innovations(g: &InnovationGenerator, n: usize, rng: &mut RngStream) -> Vec<f64> {
    (0..n).map(|_| g.draw(rng)).collect()
}

/// Fourth moment of AR residuals together with their variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourthMoment {
    /// `κ̂₄`, clamped so that `κ̂₄ ≥ σ̂⁴`.
    pub kappa4: f64,
    pub sigma2: f64,
}

impl FourthMoment {
    /// `κ̃₄ = κ̂₄ / σ̂⁴ ≥ 1`.
    pub fn standardized(&self) -> f64 {
        self.kappa4 / (self.sigma2 * self.sigma2)
    }

    pub(crate) fn from_residuals(e: &[f64]) -> Result<Self> {
        let m = mean(e);
        let n = e.len() as f64;
        let sigma2 = e.iter().map(|v| (v - m).powi(2)).sum::<f64>() / n;
        if !(sigma2 > 0.0) {
            return Err(Error::DegenerateSeries);
        }
        let m4 = e.iter().map(|v| (v - m).powi(4)).sum::<f64>() / n;
        Ok(Self { kappa4: m4.max(sigma2 * sigma2), sigma2 })
    }
}

/// AR(AIC) residual fourth moment.
pub fn estimate_kappa4(x: &TimeSeries) -> Result<FourthMoment> {
    x.require_len(32)?;
    kappa4_of(x)
}

pub(crate) fn kappa4_of(x: &[f64]) -> Result<FourthMoment> {
    let fit = fit_autoregression(x, OrderSelection::default())?;
    FourthMoment::from_residuals(&fit.residuals)
}
