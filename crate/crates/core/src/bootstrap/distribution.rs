use alloc::string::String;
use alloc::vec::Vec;

#[allow(unused_imports)] // inherent when std is linked
use num_traits::Float;

use super::generate::{generate_ar, generate_ma, default_burn_in};
use super::innovations::{kappa4_of, InnovationGenerator, InnovationKind};
use super::resample::{default_block_length, moving_block_bootstrap, ArSieve};
use crate::error::{Error, Result};
use crate::factorization::{factorize_trimmed, implied_autocovariance, WoldModel};
use crate::grid::FrequencyGrid;
use crate::rng::RngStream;
use crate::series::TimeSeries;
use crate::spectral::{fit_autoregression, Estimator, OrderSelection};
use crate::statistics::{Statistic, Studentizer};

/// MA form (`X* = Σ c_j ε*_{t−j}`) or AR form (`X* = Σ b_j X*_{t−j} + ε*`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum GenerationForm {
    #[default]
    Ma,
    Ar,
}

/// How pseudo-series are produced from the data.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "method", rename_all = "kebab-case"))]
pub enum Method {
    /// Factorize an estimated spectral density and drive it with i.i.d. innovations.
    Sddb {
        #[cfg_attr(feature = "serde", serde(default))]
        estimator: Estimator,
        #[cfg_attr(feature = "serde", serde(default))]
        form: GenerationForm,
        #[cfg_attr(feature = "serde", serde(default))]
        innovations: InnovationKind,
        #[cfg_attr(feature = "serde", serde(default))]
        grid: FrequencyGrid,
    },
    /// AR fit with resampled centered residuals.
    ArSieve {
        #[cfg_attr(feature = "serde", serde(default))]
        order: OrderSelection,
    },
    /// Moving blocks, length `⌈n^{1/3}⌉` when `None`.
    MovingBlock {
        #[cfg_attr(feature = "serde", serde(default))]
        block_length: Option<usize>,
    },
}

impl Method {
    pub fn sddb(estimator: Estimator, form: GenerationForm) -> Self {
        Method::Sddb { estimator, form, innovations: InnovationKind::default(), grid: FrequencyGrid::default() }
    }

    pub fn id(&self) -> &'static str {
        match self {
            Method::Sddb { form: GenerationForm::Ma, .. } => "sddb",
            Method::Sddb { form: GenerationForm::Ar, .. } => "sddb-ar",
            Method::ArSieve { .. } => "ars",
            Method::MovingBlock { .. } => "bb",
        }
    }
}

/// Everything needed to draw pseudo-series after one pass over the data.
#[derive(Debug, Clone)]
pub enum BootstrapWorld {
    Linear { model: WoldModel, innovations: InnovationGenerator, mean: f64, form: GenerationForm },
    Sieve(ArSieve),
    Blocks { data: TimeSeries, block_length: usize },
}

impl BootstrapWorld {
    pub fn build(method: &Method, x: &TimeSeries) -> Result<Self> {
        match method {
            Method::Sddb { estimator, form, innovations, grid } => {
                let f = estimator.estimate(x, *grid)?;
                let model = factorize_trimmed(&f)?;
                let s2 = model.sigma2();
                let innovations = match innovations {
                    InnovationKind::Gaussian => InnovationGenerator::gaussian(s2),
                    InnovationKind::ThreePoint => InnovationGenerator::three_point(s2, kappa4_of(x)?.standardized())?,
                    InnovationKind::Empirical => {
                        InnovationGenerator::empirical(&fit_autoregression(x, OrderSelection::default())?.residuals)?
                    }
                };
                Ok(BootstrapWorld::Linear { model, innovations, mean: x.mean(), form: *form })
            }
            Method::ArSieve { order } => Ok(BootstrapWorld::Sieve(ArSieve::fit(x, *order)?)),
            Method::MovingBlock { block_length } => {
                let l = block_length.unwrap_or_else(|| default_block_length(x.len()));
                if l == 0 || l > x.len() {
                    return Err(Error::InvalidParameter("block length must satisfy 1 <= l <= n"));
                }
                Ok(BootstrapWorld::Blocks { data: x.clone(), block_length: l })
            }
        }
    }

    /// Generative model, for the model-based worlds.
    pub fn model(&self) -> Option<&WoldModel> {
        match self {
            BootstrapWorld::Linear { model, .. } => Some(model),
            BootstrapWorld::Sieve(s) => Some(&s.model),
            BootstrapWorld::Blocks { .. } => None,
        }
    }

    pub fn generate(&self, n: usize, rng: &mut RngStream) -> Result<TimeSeries> {
        match self {
            BootstrapWorld::Linear { model, innovations, mean, form } => {
                innovations.check_variance(model.sigma2())?;
                let v = match form {
                    GenerationForm::Ma => generate_ma(model.ma(), n, innovations, *mean, rng),
                    GenerationForm::Ar => generate_ar(
                        &model.ar()[1..],
                        &[],
                        n,
                        innovations,
                        *mean,
                        rng,
                        default_burn_in(model.ar().len() - 1),
                    )?,
                };
                TimeSeries::new(v)
            }
            BootstrapWorld::Sieve(s) => s.generate(n, rng, None),
            BootstrapWorld::Blocks { data, block_length } => moving_block_bootstrap(data, *block_length, rng),
        }
    }

    /// Value of the statistic that bootstrap roots are centered at: its
    /// population value under the generative model, or the original estimate
    /// for block resampling.
    pub fn center(&self, statistic: &Statistic, original: f64) -> Result<f64> {
        let mean = match self {
            BootstrapWorld::Linear { mean, .. } => *mean,
            BootstrapWorld::Sieve(s) => s.fit.mean,
            BootstrapWorld::Blocks { .. } => return Ok(original),
        };
        let model = self.model().expect("model-based world");
        statistic.population(mean, &implied_autocovariance(model, statistic.max_lag()))
    }
}

/// Bootstrap replicates of one statistic.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BootstrapReplicateSet {
    pub method: String,
    pub statistic: String,
    /// `T̂` on the data.
    pub original: f64,
    /// Standard error of `T̂` when studentized.
    pub original_se: Option<f64>,
    /// Bootstrap-world value the roots `T* − center` refer to.
    pub center: f64,
    pub values: Vec<f64>,
    pub standard_errors: Option<Vec<f64>>,
    pub seed: u64,
    pub stream: u64,
}

impl BootstrapReplicateSet {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sample standard deviation of the replicate values.
    pub fn standard_deviation(&self) -> f64 {
        let b = self.values.len() as f64;
        let m = self.values.iter().sum::<f64>() / b;
        let ss: f64 = self.values.iter().map(|v| (v - m) * (v - m)).sum();
        (ss / (b - 1.0).max(1.0)).sqrt()
    }
}

/// `B` replicates; replicate `b` uses `rng.substream(b)`.
pub fn bootstrap_distribution(
    x: &TimeSeries,
    statistic: &Statistic,
    method: &Method,
    b: usize,
    rng: &RngStream,
) -> Result<BootstrapReplicateSet> {
    run(x, statistic, method, None, b, rng)
}

/// As [`bootstrap_distribution`], also recording each replicate's studentizer
/// standard error.
pub fn bootstrap_distribution_studentized(
    x: &TimeSeries,
    statistic: &Statistic,
    method: &Method,
    studentizer: &Studentizer,
    b: usize,
    rng: &RngStream,
) -> Result<BootstrapReplicateSet> {
    run(x, statistic, method, Some(studentizer), b, rng)
}

fn run(
    x: &TimeSeries,
    statistic: &Statistic,
    method: &Method,
    studentizer: Option<&Studentizer>,
    b: usize,
    rng: &RngStream,
) -> Result<BootstrapReplicateSet> {
    if b == 0 {
        return Err(Error::TooFewReplicates { got: 0, min: 1 });
    }
    let world = BootstrapWorld::build(method, x)?;
    let original = statistic.evaluate(x)?;
    let original_se = studentizer.map(|s| s.standard_error(statistic, x)).transpose()?;
    let center = world.center(statistic, original)?;
    let mut values = Vec::with_capacity(b);
    let mut ses = studentizer.map(|_| Vec::with_capacity(b));
    for i in 0..b {
        let (v, se) = replicate(&world, statistic, studentizer, x.len(), &mut rng.substream(i as u64))?;
        values.push(v);
        if let (Some(list), Some(se)) = (ses.as_mut(), se) {
            list.push(se);
        }
    }
    Ok(BootstrapReplicateSet {
        method: String::from(method.id()),
        statistic: statistic.id(),
        original,
        original_se,
        center,
        values,
        standard_errors: ses,
        seed: rng.seed(),
        stream: rng.index(),
    })
}

/// One replicate statistic (and its standard error when studentized).
pub fn replicate(
    world: &BootstrapWorld,
    statistic: &Statistic,
    studentizer: Option<&Studentizer>,
    n: usize,
    rng: &mut RngStream,
) -> Result<(f64, Option<f64>)> {
    let xs = world.generate(n, rng)?;
    let v = statistic.evaluate(&xs)?;
    let se = studentizer.map(|s| s.standard_error(statistic, &xs)).transpose()?;
    Ok((v, se))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{Bandwidth, OrderSelection};

    fn noise(n: usize, seed: u64) -> TimeSeries {
        let mut rng = RngStream::new(seed, 0);
        TimeSeries::new((0..n).map(|_| 2.0 * rng.standard_normal() + 1.0).collect()).unwrap()
    }

    fn white_sddb() -> Method {
        Method::sddb(Estimator::Ar { order: OrderSelection::Fixed(0) }, GenerationForm::Ma)
    }

    #[test]
    fn single_replicate() {
        let r = bootstrap_distribution(&noise(64, 1), &Statistic::Mean, &white_sddb(), 1, &RngStream::new(1, 0)).unwrap();
        assert_eq!(r.len(), 1);
        assert!(bootstrap_distribution(&noise(64, 1), &Statistic::Mean, &white_sddb(), 0, &RngStream::new(1, 0)).is_err());
    }

    #[test]
    fn mean_replicates_follow_clt() {
        let x = noise(256, 2);
        let r = bootstrap_distribution(&x, &Statistic::Mean, &white_sddb(), 2000, &RngStream::new(2, 0)).unwrap();
        let sigma = crate::statistics::sample_autocovariance(&x, 0).unwrap().sqrt();
        let target = sigma / (x.len() as f64).sqrt();
        assert!((r.standard_deviation() / target - 1.0).abs() < 0.1, "{} vs {target}", r.standard_deviation());
        assert_eq!(r.center, x.mean());
    }

    #[test]
    fn same_seed_bit_identical() {
        let x = noise(128, 3);
        let m = Method::Sddb {
            estimator: Estimator::Smoothed { bandwidth: Bandwidth::Fixed(0.3) },
            form: GenerationForm::Ma,
            innovations: InnovationKind::ThreePoint,
            grid: FrequencyGrid::new(512).unwrap(),
        };
        let s = Statistic::Autocorrelation { lag: 2 };
        let a = bootstrap_distribution(&x, &s, &m, 30, &RngStream::new(9, 4)).unwrap();
        let b = bootstrap_distribution(&x, &s, &m, 30, &RngStream::new(9, 4)).unwrap();
        assert_eq!(a, b);
        let c = bootstrap_distribution(&x, &s, &m, 30, &RngStream::new(9, 5)).unwrap();
        assert_ne!(a.values, c.values);
    }

    #[test]
    fn block_world_centers_at_estimate() {
        let x = noise(128, 4);
        let s = Statistic::Autocorrelation { lag: 2 };
        let r = bootstrap_distribution(&x, &s, &Method::MovingBlock { block_length: None }, 5, &RngStream::new(0, 0)).unwrap();
        assert_eq!(r.center, r.original);
        assert_eq!(r.method, "bb");
    }

    #[test]
    fn studentized_replicates_carry_errors() {
        let x = noise(128, 5);
        let st = Studentizer::new(Estimator::Ar { order: OrderSelection::default() });
        let r = bootstrap_distribution_studentized(&x, &Statistic::Mean, &Method::ArSieve { order: OrderSelection::default() }, &st, 25, &RngStream::new(0, 0))
            .unwrap();
        assert_eq!(r.standard_errors.as_ref().unwrap().len(), 25);
        assert!(r.original_se.unwrap() > 0.0);
    }
}
