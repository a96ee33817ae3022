use core::fmt;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A spectral density value is zero, negative or not finite.
    NonPositiveDensity { index: usize, value: f64 },
    /// Requested cepstral order does not fit on the frequency grid.
    GridTooCoarse { order: usize, grid: usize },
    /// Frequency grid size must be even and at least four.
    InvalidGrid(usize),
    /// The series has (numerically) zero variance.
    DegenerateSeries,
    /// A series shorter than the operation needs.
    SeriesTooShort { len: usize, min: usize },
    /// A sample is NaN or infinite.
    NonFiniteSample(usize),
    /// Three-point innovations need a standardized fourth moment of at least one.
    InvalidKurtosis(f64),
    /// Innovation generator variance does not match the Wold model.
    VarianceMismatch { generator: f64, model: f64 },
    /// AR-form generation left the overflow guard.
    ExplosivePath { step: usize },
    /// Too few bootstrap replicates for a confidence interval.
    TooFewReplicates { got: usize, min: usize },
    /// `sample_autocorrelation` on a series whose variance is zero.
    ZeroVariance,
    /// The combiner of a statistic is undefined at the evaluation point.
    CombinerDomain,
    /// Spectral estimate at zero fell below the studentization bound.
    FloorViolation { value: f64, bound: f64 },
    /// A parameter outside the operation's domain.
    InvalidParameter(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPositiveDensity { index, value } => {
                write!(f, "spectral density is not positive at grid index {index} ({value})")
            }
            Error::GridTooCoarse { order, grid } => {
                write!(f, "cepstral order {order} needs a grid larger than {grid} points")
            }
            Error::InvalidGrid(n) => write!(f, "grid size {n} must be even and at least 4"),
            Error::DegenerateSeries => f.write_str("series has zero variance"),
            Error::SeriesTooShort { len, min } => {
                write!(f, "series of length {len} is shorter than the required {min}")
            }
            Error::NonFiniteSample(i) => write!(f, "sample {i} is not finite"),
            Error::InvalidKurtosis(k) => {
                write!(f, "standardized fourth moment {k} is below one")
            }
            Error::VarianceMismatch { generator, model } => write!(
                f,
                "innovation variance {generator} does not match model variance {model}"
            ),
            Error::ExplosivePath { step } => {
                write!(f, "autoregressive recursion exploded at step {step}")
            }
            Error::TooFewReplicates { got, min } => {
                write!(f, "{got} bootstrap replicates, at least {min} needed")
            }
            Error::ZeroVariance => f.write_str("autocorrelation of a zero-variance series"),
            Error::CombinerDomain => f.write_str("statistic combiner undefined at this point"),
            Error::FloorViolation { value, bound } => {
                write!(f, "spectral estimate at zero {value} is below {bound}")
            }
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
