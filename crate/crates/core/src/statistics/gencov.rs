use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::series::{autocovariances, mean};

/// Weight `d(lag)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LagWeight {
    pub lag: i64,
    pub weight: f64,
}

/// Finitely supported weight sequence `d(h)`.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct WeightSequence {
    pub terms: Vec<LagWeight>,
}

impl WeightSequence {
    pub fn new(terms: Vec<LagWeight>) -> Self {
        Self { terms }
    }

    /// `δ_{h,lag}`.
    pub fn unit(lag: i64) -> Self {
        Self::new(alloc::vec![LagWeight { lag, weight: 1.0 }])
    }

    pub fn max_lag(&self) -> usize {
        self.terms.iter().map(|t| t.lag.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// `Σ_h d(h) γ(|h|)`, with `γ` beyond the slice read as zero.
    pub fn apply(&self, gamma: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|t| t.weight * gamma.get(t.lag.unsigned_abs() as usize).copied().unwrap_or(0.0))
            .sum()
    }

    fn validate(&self) -> Result<()> {
        if self.terms.iter().any(|t| !t.weight.is_finite()) {
            return Err(Error::InvalidParameter("weights must be finite"));
        }
        Ok(())
    }
}

/// Named combiners `g: R^P → R`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "name", rename_all = "kebab-case"))]
pub enum Combiner {
    /// `g(t) = t`, `P = 1`.
    Identity,
    /// `g(t₁, t₂) = t₁/t₂`.
    Ratio,
    /// `g(t) = Σ a_p t_p`.
    Linear { coefficients: Vec<f64> },
}

impl Combiner {
    pub fn arity(&self) -> usize {
        match self {
            Combiner::Identity => 1,
            Combiner::Ratio => 2,
            Combiner::Linear { coefficients } => coefficients.len(),
        }
    }

    pub fn apply(&self, t: &[f64]) -> Result<f64> {
        match self {
            Combiner::Identity => Ok(t[0]),
            Combiner::Ratio => {
                if t[1] == 0.0 {
                    Err(Error::CombinerDomain)
                } else {
                    Ok(t[0] / t[1])
                }
            }
            Combiner::Linear { coefficients } => Ok(coefficients.iter().zip(t).map(|(a, b)| a * b).sum()),
        }
    }

    pub fn gradient(&self, t: &[f64]) -> Result<Vec<f64>> {
        match self {
            Combiner::Identity => Ok(alloc::vec![1.0]),
            Combiner::Ratio => {
                if t[1] == 0.0 {
                    Err(Error::CombinerDomain)
                } else {
                    Ok(alloc::vec![1.0 / t[1], -t[0] / (t[1] * t[1])])
                }
            }
            Combiner::Linear { coefficients } => Ok(coefficients.clone()),
        }
    }
}

/// `T = g(T₁, …, T_P)` with `T_p = n⁻¹ Σ_t Σ_h d_p(h)(X_t − X̄)(X_{t+h} − X̄)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WeightedCovarianceSpec {
    pub weights: Vec<WeightSequence>,
    pub combiner: Combiner,
}

impl WeightedCovarianceSpec {
    pub fn new(weights: Vec<WeightSequence>, combiner: Combiner) -> Result<Self> {
        let spec = Self { weights, combiner };
        spec.validate()?;
        Ok(spec)
    }

    /// `ρ̂(lag)` written as `γ̂(lag)/γ̂(0)`.
    pub fn autocorrelation(lag: i64) -> Self {
        Self { weights: alloc::vec![WeightSequence::unit(lag), WeightSequence::unit(0)], combiner: Combiner::Ratio }
    }

    pub fn validate(&self) -> Result<()> {
        if self.weights.is_empty() || self.weights.len() != self.combiner.arity() {
            return Err(Error::InvalidParameter("combiner arity must match the number of weight sequences"));
        }
        self.weights.iter().try_for_each(WeightSequence::validate)
    }

    pub fn max_lag(&self) -> usize {
        self.weights.iter().map(WeightSequence::max_lag).max().unwrap_or(0)
    }

    /// The inner statistics `T_1..T_P`.
    pub fn components(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.validate()?;
        if x.is_empty() {
            return Err(Error::SeriesTooShort { len: 0, min: 1 });
        }
        let maxlag = self.max_lag().min(x.len() - 1);
        // Σ_t y_t y_{t+h} over valid t equals n·γ̂(|h|) for either sign of h.
        let gamma = autocovariances(x, maxlag);
        Ok(self.weights.iter().map(|d| d.apply(&gamma)).collect())
    }

    /// Value for a process with autocovariances `gamma`.
    pub fn population(&self, gamma: &[f64]) -> Result<f64> {
        self.validate()?;
        let t: Vec<f64> = self.weights.iter().map(|d| d.apply(gamma)).collect();
        self.combiner.apply(&t)
    }
}

pub fn generalized_autocovariance(x: &[f64], spec: &WeightedCovarianceSpec) -> Result<f64> {
    spec.combiner.apply(&spec.components(x)?)
}

/// `Y_t = g̃(x_t, …, x_{t+m−1})` for `t = 1..=n−m+1`.
pub fn derived_series<G>(x: &[f64], m: usize, window: G) -> Result<Vec<Vec<f64>>>
where
    G: Fn(&[f64]) -> Vec<f64>,
{
    if m == 0 || m >= x.len() {
        return Err(Error::InvalidParameter("window length must satisfy 1 <= m < n"));
    }
    Ok(x.windows(m).map(window).collect())
}

/// `h((n−m+1)⁻¹ Σ_t Y_t)`; `combiner` returns `None` outside its domain.
pub fn generalized_mean_statistic<G, H>(x: &[f64], m: usize, window: G, combiner: H) -> Result<f64>
where
    G: Fn(&[f64]) -> Vec<f64>,
    H: Fn(&[f64]) -> Option<f64>,
{
    let y = derived_series(x, m, window)?;
    let k = y[0].len();
    let ybar: Vec<f64> = (0..k).map(|i| mean(&y.iter().map(|v| v[i]).collect::<Vec<_>>())).collect();
    combiner(&ybar).ok_or(Error::CombinerDomain)
}
