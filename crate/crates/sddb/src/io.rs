//! Text formats: input series, spectrum files, coefficient and replicate tables.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use sddb_core::simharness::CoefficientRow;
use sddb_core::spectral::EstimatorFamily;
use sddb_core::{FrequencyGrid, SpectralDensityEstimate, TimeSeries};

use crate::error::{CliError, Result};

/// How many digits numeric output carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    Significant(usize),
    /// Shortest representation that parses back to the same `f64`.
    Full,
}

impl Default for Precision {
    fn default() -> Self {
        Precision::Significant(6)
    }
}

impl std::str::FromStr for Precision {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "full" {
            return Ok(Precision::Full);
        }
        match s.parse::<usize>() {
            Ok(d) if (1..=17).contains(&d) => Ok(Precision::Significant(d)),
            _ => Err(format!("expected 1..=17 or `full`, got `{s}`")),
        }
    }
}

impl Precision {
    pub fn format(self, v: f64) -> String {
        match self {
            Precision::Full => format!("{v:?}"),
            Precision::Significant(d) => format_significant(v, d),
        }
    }
}

/// `%g`-style rendering with `digits` significant digits and trailing zeros removed.
pub fn format_significant(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{}", if v == 0.0 { 0.0 } else { v });
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{exp}", trim_fraction(mantissa))
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Data read from an input file.
#[derive(Debug, Clone)]
pub enum Input {
    Series(TimeSeries),
    /// A full grid written by `sddb spectrum` (header `lambda,value`).
    Spectrum(SpectralDensityEstimate),
}

pub fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| CliError::io(path, e))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn read_input(path: &Path) -> Result<Input> {
    parse_input(&read_text(path)?, path)
}

pub fn read_series(path: &Path) -> Result<TimeSeries> {
    match read_input(path)? {
        Input::Series(x) => Ok(x),
        Input::Spectrum(_) => Err(parse_error(path, 1, "expected a series, found a spectrum file")),
    }
}

fn parse_error(path: &Path, line: u64, message: impl Into<String>) -> CliError {
    CliError::Parse { path: path.to_path_buf(), line, message: message.into() }
}

fn parse_number(path: &Path, line: u64, field: &str) -> Result<f64> {
    let v: f64 = field
        .parse()
        .map_err(|_| parse_error(path, line, format!("`{field}` is not a number")))?;
    if !v.is_finite() {
        return Err(parse_error(path, line, format!("`{field}` is not finite")));
    }
    Ok(v)
}

/// Parses one value per line, or `t,value` pairs with strictly increasing `t`.
/// An optional non-numeric header is allowed on the first record; the header
/// `lambda,value` marks a spectrum file.
pub fn parse_input(text: &str, path: &Path) -> Result<Input> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut columns = None;
    let mut spectrum = false;
    let mut first = true;
    let mut last_t = f64::NEG_INFINITY;
    let mut keys = Vec::new();
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_error(path, line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        let is_header = first && record.iter().any(|f| f.parse::<f64>().is_err());
        first = false;
        if is_header {
            spectrum = record.len() == 2 && &record[0] == "lambda" && &record[1] == "value";
            if !(1..=2).contains(&record.len()) {
                return Err(parse_error(path, line, "expected one or two columns"));
            }
            columns = Some(record.len());
            continue;
        }
        let width = *columns.get_or_insert(record.len());
        if record.len() != width || !(1..=2).contains(&width) {
            return Err(parse_error(
                path,
                line,
                format!("expected {} column(s), found {}", width.min(2), record.len()),
            ));
        }
        if width == 2 {
            let t = parse_number(path, line, &record[0])?;
            if !(t > last_t) {
                return Err(parse_error(path, line, "first column must be strictly increasing"));
            }
            last_t = t;
            keys.push(t);
        }
        values.push(parse_number(path, line, &record[width - 1])?);
    }
    if values.is_empty() {
        return Err(parse_error(path, 1, "no data"));
    }
    if spectrum {
        return spectrum_from_columns(path, &keys, values).map(Input::Spectrum);
    }
    Ok(Input::Series(TimeSeries::new(values)?))
}

fn spectrum_from_columns(path: &Path, lambdas: &[f64], values: Vec<f64>) -> Result<SpectralDensityEstimate> {
    let grid = FrequencyGrid::new(values.len())
        .map_err(|_| parse_error(path, 2, format!("a spectrum needs an even number (≥ 4) of rows, found {}", values.len())))?;
    for (j, &l) in lambdas.iter().enumerate() {
        if (l - grid.frequency(j)).abs() > 1e-5 {
            return Err(parse_error(path, j as u64 + 2, format!("expected lambda = 2π·{j}/{}", grid.len())));
        }
    }
    if let Some(j) = values.iter().position(|v| !(*v > 0.0)) {
        return Err(parse_error(path, j as u64 + 2, "spectral density values must be positive"));
    }
    Ok(SpectralDensityEstimate::unfloored(grid, values, EstimatorFamily::External)?)
}

/// Destination for command output: a file or standard output.
pub fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    match path {
        None => Ok(Box::new(io::BufWriter::new(io::stdout()))),
        Some(p) if p == Path::new("-") => Ok(Box::new(io::BufWriter::new(io::stdout()))),
        Some(p) => {
            let f = fs::File::create(p).map_err(|e| CliError::io(p, e))?;
            Ok(Box::new(io::BufWriter::new(f)))
        }
    }
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

fn csv_error(e: csv::Error) -> CliError {
    let kind = io::ErrorKind::Other;
    match e.into_kind() {
        csv::ErrorKind::Io(source) => CliError::io(PathBuf::from("<output>"), source),
        other => CliError::io(PathBuf::from("<output>"), io::Error::new(kind, format!("{other:?}"))),
    }
}

/// `lambda,value` for every grid frequency.
pub fn write_spectrum<W: Write>(w: W, f: &SpectralDensityEstimate, precision: Precision) -> Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["lambda", "value"]).map_err(csv_error)?;
    for (j, v) in f.values().iter().enumerate() {
        out.write_record([precision.format(f.grid().frequency(j)), precision.format(*v)])
            .map_err(csv_error)?;
    }
    out.flush().map_err(|e| CliError::io("<output>", e))
}

/// `k,c_k,b_k` rows.
pub fn write_coefficients<W: Write>(w: W, row: &CoefficientRow, precision: Precision) -> Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["k", "c_k", "b_k"]).map_err(csv_error)?;
    for (i, k) in row.lags.clone().enumerate() {
        out.write_record([k.to_string(), precision.format(row.c[i]), precision.format(row.b[i])])
            .map_err(csv_error)?;
    }
    out.flush().map_err(|e| CliError::io("<output>", e))
}

/// `replicate,value` rows.
pub fn write_replicates<W: Write>(w: W, values: &[f64], precision: Precision) -> Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["replicate", "value"]).map_err(csv_error)?;
    for (i, v) in values.iter().enumerate() {
        out.write_record([i.to_string(), precision.format(*v)]).map_err(csv_error)?;
    }
    out.flush().map_err(|e| CliError::io("<output>", e))
}

/// `t,value` rows with `t = 1..=n`.
pub fn write_series<W: Write>(w: W, x: &[f64], precision: Precision) -> Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["t", "value"]).map_err(csv_error)?;
    for (t, v) in x.iter().enumerate() {
        out.write_record([(t + 1).to_string(), precision.format(*v)]).map_err(csv_error)?;
    }
    out.flush().map_err(|e| CliError::io("<output>", e))
}

/// Row label used in coefficient tables.
pub fn estimator_label(name: &str) -> &str {
    match name {
        "ar" => "AR",
        "prewhiten" => "Pre-Whitening",
        "cepstrum" => "Cepstrum",
        "lag-window" => "Lag window",
        "smoothed" => "Smoothed",
        other => other,
    }
}

fn rounded(v: f64) -> String {
    let s = format!("{v:.2}");
    match s.as_str() {
        "0.00" | "-0.00" => "0".to_string(),
        _ => s,
    }
}

/// MA block then AR block, one line per estimator, two decimals.
pub fn render_coefficient_table(rows: &[CoefficientRow]) -> String {
    let Some(first) = rows.first() else {
        return String::new();
    };
    let label_width = rows.iter().map(|r| estimator_label(r.estimator).len()).max().unwrap_or(0).max(6);
    let cell = 7;
    let mut out = String::new();
    for (name, pick) in [("c_k", 0), ("b_k", 1)] {
        out.push_str(&format!("{name:<label_width$}"));
        for k in first.lags.clone() {
            out.push_str(&format!("{k:>cell$}"));
        }
        out.push('\n');
        for r in rows {
            out.push_str(&format!("{:<label_width$}", estimator_label(r.estimator)));
            let values = if pick == 0 { &r.c } else { &r.b };
            for v in values {
                out.push_str(&format!("{:>cell$}", rounded(*v)));
            }
            out.push('\n');
        }
        if pick == 0 {
            out.push('\n');
        }
    }
    out
}
