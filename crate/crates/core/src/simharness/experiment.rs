use alloc::vec::Vec;

#[allow(unused_imports)] // inherent when std is linked
use num_traits::Float;

use super::models::{simulate_model, true_rho2, ModelId, ModelSpec};
use crate::bootstrap::{
    bootstrap_distribution, bootstrap_distribution_studentized, confidence_interval, normal_interval,
    ConfidenceInterval, GenerationForm, InnovationKind, IntervalMode, Method,
};
use crate::error::Result;
use crate::grid::FrequencyGrid;
use crate::rng::RngStream;
use crate::spectral::{Estimator, OrderSelection};
use crate::statistics::{Statistic, Studentizer};

/// Interval constructions compared in a coverage study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum CoverageMethod {
    Sddb,
    SddbAr,
    Ars,
    Bb,
    /// Normal quantiles around the plug-in standard error (studentized) or the
    /// SDDB replicate standard deviation (raw).
    Nd,
}

impl CoverageMethod {
    pub fn name(self) -> &'static str {
        match self {
            CoverageMethod::Sddb => "sddb",
            CoverageMethod::SddbAr => "sddb-ar",
            CoverageMethod::Ars => "ars",
            CoverageMethod::Bb => "bb",
            CoverageMethod::Nd => "nd",
        }
    }

    fn code(self) -> u64 {
        match self {
            CoverageMethod::Sddb | CoverageMethod::Nd => 0,
            CoverageMethod::SddbAr => 1,
            CoverageMethod::Ars => 2,
            CoverageMethod::Bb => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum CoverageStatistic {
    Mean,
    Rho2,
}

impl CoverageStatistic {
    pub fn name(self) -> &'static str {
        match self {
            CoverageStatistic::Mean => "mean",
            CoverageStatistic::Rho2 => "rho2",
        }
    }

    pub fn statistic(self) -> Statistic {
        match self {
            CoverageStatistic::Mean => Statistic::Mean,
            CoverageStatistic::Rho2 => Statistic::Autocorrelation { lag: 2 },
        }
    }

    fn code(self) -> u64 {
        match self {
            CoverageStatistic::Mean => 0,
            CoverageStatistic::Rho2 => 1,
        }
    }

    /// Coverage target: zero mean, or the model's true `ρ(2)`.
    pub fn truth(self, model: ModelId) -> f64 {
        match self {
            CoverageStatistic::Mean => 0.0,
            CoverageStatistic::Rho2 => true_rho2(model),
        }
    }
}

/// A configuration field that failed validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConfigIssue {
    pub field: &'static str,
    pub message: &'static str,
}

/// Monte Carlo coverage experiment.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct ExperimentConfig {
    pub models: Vec<ModelId>,
    pub n: usize,
    pub methods: Vec<CoverageMethod>,
    pub statistics: Vec<CoverageStatistic>,
    pub studentized: bool,
    /// Two-sided levels `α`; intervals have nominal coverage `1 − α`.
    pub levels: Vec<f64>,
    pub realizations: usize,
    pub replicates: usize,
    #[cfg_attr(feature = "serde", serde(default))]
    pub seed: u64,
    /// Spectral estimator of the SDDB and of the studentizer.
    #[cfg_attr(feature = "serde", serde(default))]
    pub estimator: Estimator,
    #[cfg_attr(feature = "serde", serde(default))]
    pub innovations: InnovationKind,
    #[cfg_attr(feature = "serde", serde(default = "default_grid"))]
    pub grid: usize,
    #[cfg_attr(feature = "serde", serde(default = "default_studentizer_grid"))]
    pub studentizer_grid: usize,
}

#[cfg(feature = "serde")]
fn default_grid() -> usize {
    FrequencyGrid::DEFAULT_SIZE
}

#[cfg(feature = "serde")]
fn default_studentizer_grid() -> usize {
    Studentizer::DEFAULT_GRID
}

impl ExperimentConfig {
    /// `R = 500`, `B = 500`, `n = 128`, all models, SDDB, both statistics, studentized.
    pub fn desk(seed: u64) -> Self {
        Self {
            models: ModelId::ALL.to_vec(),
            n: 128,
            methods: alloc::vec![CoverageMethod::Sddb],
            statistics: alloc::vec![CoverageStatistic::Mean, CoverageStatistic::Rho2],
            studentized: true,
            levels: alloc::vec![0.2, 0.1, 0.05],
            realizations: 500,
            replicates: 500,
            seed,
            estimator: Estimator::default(),
            innovations: InnovationKind::Gaussian,
            grid: FrequencyGrid::DEFAULT_SIZE,
            studentizer_grid: Studentizer::DEFAULT_GRID,
        }
    }

    /// Desk configuration at `R = 2000`, `B = 1000`.
    pub fn paper(seed: u64) -> Self {
        Self { realizations: 2000, replicates: 1000, ..Self::desk(seed) }
    }

    pub fn validate(&self) -> core::result::Result<(), ConfigIssue> {
        let issue = |field, message| Err(ConfigIssue { field, message });
        if self.models.is_empty() {
            return issue("models", "at least one model is required");
        }
        if self.methods.is_empty() {
            return issue("methods", "at least one method is required");
        }
        if self.statistics.is_empty() {
            return issue("statistics", "at least one statistic is required");
        }
        if self.n < 32 {
            return issue("n", "series length must be at least 32");
        }
        if self.realizations == 0 {
            return issue("realizations", "must be at least 1");
        }
        if self.replicates < crate::bootstrap::MIN_REPLICATES {
            return issue("replicates", "must be at least 20");
        }
        if self.levels.is_empty() || self.levels.iter().any(|a| !(*a > 0.0 && *a < 1.0)) {
            return issue("levels", "levels must lie in (0, 1)");
        }
        if FrequencyGrid::new(self.grid).is_err() {
            return issue("grid", "grid size must be even and at least 4");
        }
        if FrequencyGrid::new(self.studentizer_grid).is_err() {
            return issue("studentizer_grid", "grid size must be even and at least 4");
        }
        Ok(())
    }

    /// Every `(model, method, statistic)` combination, in configuration order.
    pub fn cells(&self) -> Vec<CellKey> {
        let mut out = Vec::new();
        for &model in &self.models {
            for &method in &self.methods {
                for &statistic in &self.statistics {
                    out.push(CellKey { model, method, statistic });
                }
            }
        }
        out
    }

    fn studentizer(&self) -> Studentizer {
        Studentizer::new(self.estimator.clone())
            .with_grid(FrequencyGrid::new(self.studentizer_grid).expect("validated grid"))
    }

    fn sddb(&self, form: GenerationForm) -> Method {
        Method::Sddb {
            estimator: self.estimator.clone(),
            form,
            innovations: self.innovations,
            grid: FrequencyGrid::new(self.grid).expect("validated grid"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellKey {
    pub model: ModelId,
    pub method: CoverageMethod,
    pub statistic: CoverageStatistic,
}

/// Root stream of realization `r` of a model; data and every method's
/// replicates draw from fixed children, so cells share realizations.
pub fn realization_stream(seed: u64, model: ModelId, r: usize) -> RngStream {
    RngStream::new(seed, model.code()).substream(r as u64)
}

/// One cell prepared for repeated evaluation over realizations.
#[derive(Debug, Clone)]
pub struct CellPlan {
    pub key: CellKey,
    pub truth: f64,
    config: ExperimentConfig,
    statistic: Statistic,
    studentizer: Studentizer,
}

impl CellPlan {
    pub fn new(config: &ExperimentConfig, key: CellKey) -> Self {
        Self {
            key,
            truth: key.statistic.truth(key.model),
            config: config.clone(),
            statistic: key.statistic.statistic(),
            studentizer: config.studentizer(),
        }
    }

    /// Intervals at every configured level for realization `r`.
    pub fn intervals(&self, r: usize) -> Result<Vec<ConfidenceInterval>> {
        let cfg = &self.config;
        let root = realization_stream(cfg.seed, self.key.model, r);
        let x = simulate_model(&ModelSpec::new(self.key.model, cfg.n), &mut root.substream(0));
        let boot = root.substream(1 + 4 * self.key.method.code() + self.key.statistic.code());
        let b = cfg.replicates;
        let stat = &self.statistic;

        let method = match self.key.method {
            CoverageMethod::Sddb => cfg.sddb(GenerationForm::Ma),
            CoverageMethod::SddbAr => cfg.sddb(GenerationForm::Ar),
            CoverageMethod::Ars => Method::ArSieve { order: OrderSelection::default() },
            CoverageMethod::Bb => Method::MovingBlock { block_length: None },
            CoverageMethod::Nd => {
                let estimate = stat.evaluate(&x)?;
                let se = if cfg.studentized {
                    self.studentizer.standard_error(stat, &x)?
                } else {
                    bootstrap_distribution(&x, stat, &cfg.sddb(GenerationForm::Ma), b, &boot)?.standard_deviation()
                };
                return cfg.levels.iter().map(|&a| normal_interval(estimate, se, a)).collect();
            }
        };
        let (set, mode) = if cfg.studentized {
            (bootstrap_distribution_studentized(&x, stat, &method, &self.studentizer, b, &boot)?, IntervalMode::Studentized)
        } else {
            (bootstrap_distribution(&x, stat, &method, b, &boot)?, IntervalMode::BasicRoot)
        };
        cfg.levels.iter().map(|&a| confidence_interval(&set, a, mode)).collect()
    }

    /// Whether each level's interval covers the truth in realization `r`.
    pub fn hits(&self, r: usize) -> Result<Vec<bool>> {
        Ok(self.intervals(r)?.iter().map(|ci| ci.contains(self.truth)).collect())
    }
}

/// Coverage of one `(cell, level)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CoverageRow {
    pub model: ModelId,
    pub method: CoverageMethod,
    pub statistic: CoverageStatistic,
    pub level: f64,
    /// Percent of realizations whose interval covered the truth.
    pub coverage: f64,
    /// Monte Carlo standard error `100·√(p(1−p)/R)`.
    pub se: f64,
    pub runtime_ms: f64,
    pub realizations: usize,
}

impl CoverageRow {
    pub fn from_hits(key: CellKey, level: f64, hits: usize, realizations: usize, runtime_ms: f64) -> Self {
        let p = hits as f64 / realizations as f64;
        Self {
            model: key.model,
            method: key.method,
            statistic: key.statistic,
            level,
            coverage: 100.0 * p,
            se: 100.0 * (p * (1.0 - p) / realizations as f64).sqrt(),
            runtime_ms,
            realizations,
        }
    }
}

/// Coverage table of an experiment, rows sorted by cell then configured level order.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CoverageReport {
    pub config: ExperimentConfig,
    pub rows: Vec<CoverageRow>,
}

/// Outcome of running one cell over all realizations.
#[derive(Debug, Clone, PartialEq)]
pub struct CellOutcome {
    pub key: CellKey,
    /// `hits[r][l]`.
    pub hits: Vec<Vec<bool>>,
    pub runtime_ms: f64,
}

impl CellOutcome {
    pub fn rows(&self, levels: &[f64]) -> Vec<CoverageRow> {
        let r = self.hits.len();
        levels
            .iter()
            .enumerate()
            .map(|(l, &a)| {
                let h = self.hits.iter().filter(|v| v[l]).count();
                CoverageRow::from_hits(self.key, a, h, r, self.runtime_ms)
            })
            .collect()
    }
}

impl CoverageReport {
    /// Assembles a report; the order of `outcomes` does not matter.
    pub fn assemble(config: &ExperimentConfig, mut outcomes: Vec<CellOutcome>) -> Self {
        let order = config.cells();
        outcomes.sort_by_key(|o| order.iter().position(|k| *k == o.key));
        let rows = outcomes.iter().flat_map(|o| o.rows(&config.levels)).collect();
        Self { config: config.clone(), rows }
    }

    pub fn row(&self, model: ModelId, method: CoverageMethod, statistic: CoverageStatistic, level: f64) -> Option<&CoverageRow> {
        self.rows
            .iter()
            .find(|r| r.model == model && r.method == method && r.statistic == statistic && r.level == level)
    }
}

/// Runs a cell sequentially over all realizations (runtime not measured).
pub fn run_cell(config: &ExperimentConfig, key: CellKey) -> Result<CellOutcome> {
    let plan = CellPlan::new(config, key);
    let hits = (0..config.realizations).map(|r| plan.hits(r)).collect::<Result<Vec<_>>>()?;
    Ok(CellOutcome { key, hits, runtime_ms: 0.0 })
}

/// Sequential coverage study.
pub fn coverage_study(config: &ExperimentConfig) -> Result<CoverageReport> {
    let outcomes = config.cells().into_iter().map(|k| run_cell(config, k)).collect::<Result<Vec<_>>>()?;
    Ok(CoverageReport::assemble(config, outcomes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> ExperimentConfig {
        ExperimentConfig {
            models: alloc::vec![ModelId::I],
            methods: alloc::vec![CoverageMethod::Sddb, CoverageMethod::Nd, CoverageMethod::Bb],
            statistics: alloc::vec![CoverageStatistic::Mean],
            realizations: 3,
            replicates: 20,
            n: 64,
            estimator: Estimator::Ar { order: OrderSelection::default() },
            studentizer_grid: 256,
            grid: 1024,
            ..ExperimentConfig::desk(4)
        }
    }

    #[test]
    fn validation_names_fields() {
        let mut c = tiny();
        c.levels = alloc::vec![1.5];
        assert_eq!(c.validate().unwrap_err().field, "levels");
        let mut c = tiny();
        c.replicates = 5;
        assert_eq!(c.validate().unwrap_err().field, "replicates");
        assert!(tiny().validate().is_ok());
    }

    #[test]
    fn report_is_deterministic_and_monotone() {
        let cfg = tiny();
        let a = coverage_study(&cfg).unwrap();
        let b = coverage_study(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rows.len(), 9);
        for chunk in a.rows.chunks(3) {
            assert!(chunk[0].coverage <= chunk[1].coverage && chunk[1].coverage <= chunk[2].coverage);
        }
    }

    #[test]
    fn assembly_ignores_outcome_order() {
        let cfg = tiny();
        let mut outcomes: Vec<CellOutcome> = cfg.cells().into_iter().map(|k| run_cell(&cfg, k).unwrap()).collect();
        let forward = CoverageReport::assemble(&cfg, outcomes.clone());
        outcomes.reverse();
        assert_eq!(forward, CoverageReport::assemble(&cfg, outcomes));
    }

    #[test]
    fn standard_error_formula() {
        let key = CellKey { model: ModelId::I, method: CoverageMethod::Sddb, statistic: CoverageStatistic::Mean };
        let row = CoverageRow::from_hits(key, 0.1, 90, 100, 0.0);
        assert!((row.coverage - 90.0).abs() < 1e-12);
        assert!((row.se - 3.0).abs() < 1e-12);
    }
}
