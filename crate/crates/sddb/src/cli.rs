//! Command-line interface.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sddb_core::bootstrap::{
    bootstrap_distribution, bootstrap_distribution_studentized, confidence_interval, normal_interval,
    ConfidenceInterval, GenerationForm, InnovationKind, IntervalMode, Method,
};
use sddb_core::factorization::factorize;
use sddb_core::simharness::{coefficient_table, realization_stream, simulate_model, CoefficientRow, ExperimentConfig, ModelId, ModelSpec};
use sddb_core::spectral::{Bandwidth, Estimator, LagKernel, OrderSelection};
use sddb_core::statistics::{Statistic, Studentizer, WeightedCovarianceSpec};
use sddb_core::{FrequencyGrid, RngStream};

use crate::config::{parse_experiment, read_experiment, read_json, DESK_JSON, SMOKE_JSON};
use crate::coverage::{coverage_study_with, render_csv, render_text, CsvSink};
use crate::error::{CliError, Result};
use crate::io::{
    open_output, read_input, read_series, render_coefficient_table, write_coefficients, write_replicates,
    write_series, write_spectrum, Input, Precision,
};

/// Seed used by every subcommand except `coverage` when `--seed` is absent.
pub const DEFAULT_SEED: u64 = 20_240_229;

#[derive(Debug, Parser)]
#[command(name = "sddb", version, about = "Spectral-density-driven bootstrap for time series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate the spectral density of a series; writes `lambda,value`.
    Spectrum(SpectrumArgs),
    /// Wold MA and AR coefficients of an estimated (or supplied) spectrum.
    Factorize(FactorizeArgs),
    /// Bootstrap confidence intervals for a statistic of a series.
    Bootstrap(BootstrapArgs),
    /// Draw one realization of a simulation model; writes `t,value`.
    Simulate(SimulateArgs),
    /// Run a Monte Carlo coverage study from a JSON configuration.
    Coverage(CoverageArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Ar,
    LagWindow,
    Smoothed,
    Prewhiten,
    Cepstrum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kernel {
    Bartlett,
    Trapezoid,
    Gaussian,
}

/// A positive number or the data-driven rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tune<T> {
    Auto,
    Value(T),
}

fn parse_bandwidth(s: &str) -> std::result::Result<Tune<f64>, String> {
    match s {
        "cv" => Ok(Tune::Auto),
        _ => s.parse().map(Tune::Value).map_err(|_| format!("expected a bandwidth or `cv`, got `{s}`")),
    }
}

fn parse_order(s: &str) -> std::result::Result<Tune<usize>, String> {
    match s {
        "aic" => Ok(Tune::Auto),
        _ => s.parse().map(Tune::Value).map_err(|_| format!("expected an order or `aic`, got `{s}`")),
    }
}

#[derive(Debug, Clone, Args)]
pub struct EstimatorArgs {
    #[arg(long, value_enum, default_value = "prewhiten")]
    pub estimator: Family,
    /// Lag-window kernel.
    #[arg(long, value_enum, default_value = "trapezoid")]
    pub kernel: Kernel,
    /// Lag-window truncation (default: twice the Politis rule, capped at n − 1).
    #[arg(long)]
    pub trunc: Option<usize>,
    /// Smoothing bandwidth in radians, or `cv`.
    #[arg(long, default_value = "cv", value_parser = parse_bandwidth)]
    pub bandwidth: Tune<f64>,
    /// Autoregressive order, or `aic`.
    #[arg(long, default_value = "aic", value_parser = parse_order)]
    pub order: Tune<usize>,
    /// Cepstral threshold (default: the data-driven rule).
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Frequency grid size.
    #[arg(long, default_value_t = FrequencyGrid::DEFAULT_SIZE)]
    pub grid: usize,
}

impl EstimatorArgs {
    pub fn estimator(&self) -> Estimator {
        let order = match self.order {
            Tune::Auto => OrderSelection::default(),
            Tune::Value(p) => OrderSelection::Fixed(p),
        };
        let bandwidth = match self.bandwidth {
            Tune::Auto => Bandwidth::default(),
            Tune::Value(h) => Bandwidth::Fixed(h),
        };
        match self.estimator {
            Family::Ar => Estimator::Ar { order },
            Family::LagWindow => Estimator::LagWindow {
                kernel: match self.kernel {
                    Kernel::Bartlett => LagKernel::Bartlett,
                    Kernel::Trapezoid => LagKernel::Trapezoid,
                    Kernel::Gaussian => LagKernel::Gaussian,
                },
                truncation: self.trunc,
            },
            Family::Smoothed => Estimator::Smoothed { bandwidth },
            Family::Prewhiten => Estimator::PreWhitened { order, bandwidth },
            Family::Cepstrum => Estimator::Cepstrum { threshold: self.threshold },
        }
    }

    pub fn grid(&self) -> Result<FrequencyGrid> {
        FrequencyGrid::new(self.grid).map_err(|e| CliError::config("--grid", e.to_string()))
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file (standard output when absent or `-`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Significant digits of CSV numbers (1–17), or `full` for lossless output.
    #[arg(long, default_value = "6")]
    pub precision: Precision,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    /// Series CSV (`-` for standard input).
    pub input: PathBuf,
    #[command(flatten)]
    pub estimator: EstimatorArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct FactorizeArgs {
    /// Series CSV, or a spectrum CSV written by `sddb spectrum`.
    pub input: PathBuf,
    #[command(flatten)]
    pub estimator: EstimatorArgs,
    /// First reported lag.
    #[arg(long, default_value_t = 1)]
    pub kmin: usize,
    /// Last reported lag.
    #[arg(long, default_value_t = 10)]
    pub kmax: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: TableFormat,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodName {
    Sddb,
    SddbAr,
    Ars,
    Bb,
    Nd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Innovations {
    Gaussian,
    Threepoint,
    Empirical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct BootstrapArgs {
    /// Series CSV (`-` for standard input).
    pub input: PathBuf,
    #[command(flatten)]
    pub estimator: EstimatorArgs,
    #[arg(long, value_enum, default_value = "sddb")]
    pub method: MethodName,
    #[arg(long, value_enum, default_value = "gaussian")]
    pub innovations: Innovations,
    /// `mean`, `rho<h>`, `gamma<h>` or `gencov:<spec.json>`.
    #[arg(long, default_value = "mean")]
    pub statistic: String,
    #[arg(long)]
    pub studentized: bool,
    /// Number of bootstrap replicates.
    #[arg(long = "B", default_value_t = 500)]
    pub replicates: usize,
    /// Two-sided level; repeat for several intervals.
    #[arg(long, default_values_t = [0.05])]
    pub alpha: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Moving-block length (default ⌈n^{1/3}⌉).
    #[arg(long)]
    pub block_length: Option<usize>,
    /// `json` report, or `csv` replicate values.
    #[arg(long, value_enum, default_value = "json")]
    pub format: ReportFormat,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelName {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
    #[value(name = "III")]
    III,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub model: ModelName,
    #[arg(long, default_value_t = 128)]
    pub n: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Realization index; the same index in `coverage` sees the same series.
    #[arg(long, default_value_t = 0)]
    pub realization: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Desk,
    Smoke,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StudyFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["config", "preset"]))]
pub struct CoverageArgs {
    /// Experiment configuration JSON.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Bundled configuration.
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Master seed; required, and overrides any seed in the configuration.
    #[arg(long)]
    pub seed: u64,
    /// Paper scale: R = 2000 realizations and B = 1000 replicates.
    #[arg(long)]
    pub paper: bool,
    /// CSV report file, written as each cell completes.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Format of the summary on standard output.
    #[arg(long, value_enum, default_value = "text")]
    pub format: StudyFormat,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

/// Parses arguments and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 0,
                _ => 3,
            };
        }
    };
    match run(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(command: &Command) -> Result<()> {
    match command {
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Factorize(a) => cmd_factorize(a),
        Command::Bootstrap(a) => cmd_bootstrap(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Coverage(a) => cmd_coverage(a),
    }
}

fn flush(mut w: Box<dyn Write>) -> Result<()> {
    w.flush().map_err(|e| CliError::io("<output>", e))
}

fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    let mut w = open_output(path)?;
    w.write_all(text.as_bytes()).map_err(|e| CliError::io("<output>", e))?;
    flush(w)
}

pub fn cmd_spectrum(a: &SpectrumArgs) -> Result<()> {
    let x = read_series(&a.input)?;
    let f = a.estimator.estimator().estimate(&x, a.estimator.grid()?)?;
    write_spectrum(open_output(a.output.out.as_deref())?, &f, a.output.precision)
}

/// Coefficient row for `k ∈ kmin..=kmax` from a series or a supplied spectrum.
pub fn factorize_input(input: &Input, estimator: &EstimatorArgs, kmin: usize, kmax: usize) -> Result<CoefficientRow> {
    if kmin > kmax {
        return Err(CliError::config("--kmin", "must not exceed --kmax"));
    }
    let lags = kmin..=kmax;
    match input {
        Input::Series(x) => {
            let rows = coefficient_table(x, &[estimator.estimator()], estimator.grid()?, lags)?;
            Ok(rows.into_iter().next().expect("one estimator"))
        }
        Input::Spectrum(f) => {
            let w = factorize(f, None)?;
            let pick = |s: &[f64]| lags.clone().map(|k| s.get(k).copied().unwrap_or(0.0)).collect();
            Ok(CoefficientRow { estimator: "external", lags: lags.clone(), c: pick(w.ma()), b: pick(w.ar()) })
        }
    }
}

pub fn cmd_factorize(a: &FactorizeArgs) -> Result<()> {
    let row = factorize_input(&read_input(&a.input)?, &a.estimator, a.kmin, a.kmax)?;
    match a.format {
        TableFormat::Csv => write_coefficients(open_output(a.output.out.as_deref())?, &row, a.output.precision),
        TableFormat::Text => write_text(a.output.out.as_deref(), &render_coefficient_table(&[row])),
    }
}

pub fn parse_statistic(s: &str) -> Result<Statistic> {
    let lag = |rest: &str| {
        rest.parse::<usize>()
            .map_err(|_| CliError::config("--statistic", format!("`{s}`: expected a lag after the name")))
    };
    if s == "mean" {
        Ok(Statistic::Mean)
    } else if let Some(path) = s.strip_prefix("gencov:") {
        let spec: WeightedCovarianceSpec = read_json(Path::new(path))?;
        spec.validate()?;
        Ok(Statistic::Generalized { spec })
    } else if let Some(rest) = s.strip_prefix("rho") {
        Ok(Statistic::Autocorrelation { lag: lag(rest)? })
    } else if let Some(rest) = s.strip_prefix("gamma") {
        Ok(Statistic::Autocovariance { lag: lag(rest)? })
    } else {
        Err(CliError::config("--statistic", format!("unknown statistic `{s}`")))
    }
}

#[derive(Debug, Serialize)]
struct IntervalReport {
    alpha: f64,
    lower: f64,
    upper: f64,
}

impl From<ConfidenceInterval> for IntervalReport {
    fn from(ci: ConfidenceInterval) -> Self {
        Self { alpha: ci.alpha, lower: ci.lower, upper: ci.upper }
    }
}

/// What `sddb bootstrap` prints.
#[derive(Debug, Serialize)]
pub struct BootstrapReport {
    method: String,
    /// Full method configuration (absent for `nd` with a plug-in standard error).
    configuration: Option<Method>,
    statistic: Statistic,
    estimate: f64,
    standard_error: Option<f64>,
    studentized: bool,
    #[serde(rename = "B")]
    replicates: usize,
    seed: u64,
    intervals: Vec<IntervalReport>,
}

fn bootstrap_method(a: &BootstrapArgs, form: GenerationForm) -> Result<Method> {
    Ok(Method::Sddb {
        estimator: a.estimator.estimator(),
        form,
        innovations: match a.innovations {
            Innovations::Gaussian => InnovationKind::Gaussian,
            Innovations::Threepoint => InnovationKind::ThreePoint,
            Innovations::Empirical => InnovationKind::Empirical,
        },
        grid: a.estimator.grid()?,
    })
}

/// Runs `sddb bootstrap` and returns the report together with the replicate values.
pub fn bootstrap_report(a: &BootstrapArgs) -> Result<(BootstrapReport, Vec<f64>)> {
    for &alpha in &a.alpha {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(CliError::config("--alpha", format!("{alpha} is outside (0, 1)")));
        }
    }
    let x = read_series(&a.input)?;
    let stat = parse_statistic(&a.statistic)?;
    let rng = RngStream::new(a.seed, 0);
    let studentizer = Studentizer::new(a.estimator.estimator());
    let method = match a.method {
        MethodName::Sddb | MethodName::Nd => bootstrap_method(a, GenerationForm::Ma)?,
        MethodName::SddbAr => bootstrap_method(a, GenerationForm::Ar)?,
        MethodName::Ars => Method::ArSieve {
            order: match a.estimator.order {
                Tune::Auto => OrderSelection::default(),
                Tune::Value(p) => OrderSelection::Fixed(p),
            },
        },
        MethodName::Bb => Method::MovingBlock { block_length: a.block_length },
    };
    let estimate = stat.evaluate(&x)?;
    if a.method == MethodName::Nd {
        let (se, configuration, values) = if a.studentized {
            (studentizer.standard_error(&stat, &x)?, None, Vec::new())
        } else {
            let set = bootstrap_distribution(&x, &stat, &method, a.replicates, &rng)?;
            (set.standard_deviation(), Some(method), set.values)
        };
        let intervals = a
            .alpha
            .iter()
            .map(|&al| normal_interval(estimate, se, al).map(IntervalReport::from))
            .collect::<sddb_core::Result<_>>()?;
        let report = BootstrapReport {
            method: "nd".into(),
            configuration,
            statistic: stat,
            estimate,
            standard_error: Some(se),
            studentized: a.studentized,
            replicates: if values.is_empty() { 0 } else { a.replicates },
            seed: a.seed,
            intervals,
        };
        return Ok((report, values));
    }
    let (set, mode) = if a.studentized {
        (
            bootstrap_distribution_studentized(&x, &stat, &method, &studentizer, a.replicates, &rng)?,
            IntervalMode::Studentized,
        )
    } else {
        (bootstrap_distribution(&x, &stat, &method, a.replicates, &rng)?, IntervalMode::BasicRoot)
    };
    let intervals = a
        .alpha
        .iter()
        .map(|&al| confidence_interval(&set, al, mode).map(IntervalReport::from))
        .collect::<sddb_core::Result<_>>()?;
    let report = BootstrapReport {
        method: method.id().into(),
        configuration: Some(method),
        statistic: stat,
        estimate,
        standard_error: set.original_se,
        studentized: a.studentized,
        replicates: a.replicates,
        seed: a.seed,
        intervals,
    };
    Ok((report, set.values))
}

pub fn cmd_bootstrap(a: &BootstrapArgs) -> Result<()> {
    let (report, values) = bootstrap_report(a)?;
    match a.format {
        ReportFormat::Json => {
            let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
            text.push('\n');
            write_text(a.output.out.as_deref(), &text)
        }
        ReportFormat::Csv => write_replicates(open_output(a.output.out.as_deref())?, &values, a.output.precision),
    }
}

pub fn cmd_simulate(a: &SimulateArgs) -> Result<()> {
    if a.n < 32 {
        return Err(CliError::config("--n", "series length must be at least 32"));
    }
    let id = match a.model {
        ModelName::I => ModelId::I,
        ModelName::II => ModelId::II,
        ModelName::III => ModelId::III,
    };
    let mut rng = realization_stream(a.seed, id, a.realization).substream(0);
    let x = simulate_model(&ModelSpec::new(id, a.n), &mut rng);
    write_series(open_output(a.output.out.as_deref())?, &x, a.output.precision)
}

/// Loads the configuration a `coverage` invocation describes.
pub fn coverage_config(a: &CoverageArgs) -> Result<ExperimentConfig> {
    let mut cfg = match (&a.config, a.preset) {
        (Some(path), _) => read_experiment(path)?,
        (None, Some(Preset::Desk)) => parse_experiment(DESK_JSON, Path::new("desk.json"))?,
        (None, Some(Preset::Smoke)) => parse_experiment(SMOKE_JSON, Path::new("smoke.json"))?,
        (None, None) => return Err(CliError::config("--config", "a configuration is required")),
    };
    cfg.seed = a.seed;
    if a.paper {
        cfg.realizations = 2000;
        cfg.replicates = 1000;
    }
    Ok(cfg)
}

pub fn cmd_coverage(a: &CoverageArgs) -> Result<()> {
    let cfg = coverage_config(a)?;
    let run = || -> Result<()> {
        let report = match &a.out {
            Some(path) => {
                let file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
                let mut sink = CsvSink::new(std::io::BufWriter::new(file))?;
                coverage_study_with(&cfg, |rows| sink.push(rows))?
            }
            None => coverage_study_with(&cfg, |_| Ok(()))?,
        };
        let text = match a.format {
            StudyFormat::Text => render_text(&report),
            StudyFormat::Csv => render_csv(&report),
            StudyFormat::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        };
        write_text(None, &text)
    };
    match a.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::config("--threads", e.to_string()))?
            .install(run),
        None => run(),
    }
}
