//! Parallel coverage studies and their CSV / text renderings.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use sddb_core::simharness::{CellOutcome, CellPlan, CoverageReport, CoverageRow, ExperimentConfig};

use crate::error::{CliError, Result};

/// Runs one cell with realizations spread over the rayon pool. Results do
/// not depend on scheduling: every realization owns its random streams.
pub fn run_cell_parallel(config: &ExperimentConfig, plan: &CellPlan) -> sddb_core::Result<CellOutcome> {
    let start = Instant::now();
    let hits = (0..config.realizations)
        .into_par_iter()
        .map(|r| plan.hits(r))
        .collect::<sddb_core::Result<Vec<_>>>()?;
    Ok(CellOutcome { key: plan.key, hits, runtime_ms: start.elapsed().as_secs_f64() * 1e3 })
}

/// Runs every cell, handing each finished cell's rows to `on_cell` before
/// starting the next one.
pub fn coverage_study_with<F>(config: &ExperimentConfig, mut on_cell: F) -> Result<CoverageReport>
where
    F: FnMut(&[CoverageRow]) -> Result<()>,
{
    let mut outcomes = Vec::new();
    for key in config.cells() {
        let outcome = run_cell_parallel(config, &CellPlan::new(config, key))?;
        on_cell(&outcome.rows(&config.levels))?;
        outcomes.push(outcome);
    }
    Ok(CoverageReport::assemble(config, outcomes))
}

pub fn coverage_study(config: &ExperimentConfig) -> Result<CoverageReport> {
    coverage_study_with(config, |_| Ok(()))
}

pub const CSV_HEADER: &str = "model,method,statistic,level,coverage,se,runtime_ms";

pub fn csv_line(row: &CoverageRow) -> String {
    format!(
        "{},{},{},{},{:.1},{:.2},{:.0}",
        row.model.name(),
        row.method.name(),
        row.statistic.name(),
        row.level,
        row.coverage,
        row.se,
        row.runtime_ms
    )
}

/// Incremental CSV writer flushed after every cell.
pub struct CsvSink<W: Write> {
    out: W,
}

impl<W: Write> CsvSink<W> {
    pub fn new(mut out: W) -> Result<Self> {
        writeln!(out, "{CSV_HEADER}").map_err(|e| CliError::io("<report>", e))?;
        Ok(Self { out })
    }

    pub fn push(&mut self, rows: &[CoverageRow]) -> Result<()> {
        for r in rows {
            writeln!(self.out, "{}", csv_line(r)).map_err(|e| CliError::io("<report>", e))?;
        }
        self.out.flush().map_err(|e| CliError::io("<report>", e))
    }
}

pub fn render_csv(report: &CoverageReport) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in &report.rows {
        s.push_str(&csv_line(r));
        s.push('\n');
    }
    s
}

/// One line per (statistic, method), one column group per model, nominal
/// levels `(1 − α)·100` across.
pub fn render_text(report: &CoverageReport) -> String {
    let cfg = &report.config;
    let mut out = String::new();
    let width = 8;
    for &statistic in &cfg.statistics {
        out.push_str(&format!(
            "{} ({}, n = {}, R = {}, B = {})\n",
            statistic.name(),
            if cfg.studentized { "studentized" } else { "raw" },
            cfg.n,
            cfg.realizations,
            cfg.replicates
        ));
        out.push_str(&format!("{:<10}", ""));
        for &m in &cfg.models {
            out.push_str(&format!("| {:<w$}", format!("Model {}", m.name()), w = width * cfg.levels.len() - 1));
        }
        out.push('\n');
        out.push_str(&format!("{:<10}", "(1-a)100"));
        for _ in &cfg.models {
            out.push('|');
            for a in &cfg.levels {
                out.push_str(&format!("{:>width$.1}", 100.0 * (1.0 - a)));
            }
        }
        out.push('\n');
        for &method in &cfg.methods {
            out.push_str(&format!("{:<10}", method.name().to_uppercase()));
            for &m in &cfg.models {
                out.push('|');
                for &a in &cfg.levels {
                    match report.row(m, method, statistic, a) {
                        Some(r) => out.push_str(&format!("{:>width$.1}", r.coverage)),
                        None => out.push_str(&format!("{:>width$}", "-")),
                    }
                }
            }
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use sddb_core::simharness::{CoverageMethod, CoverageStatistic, ModelId};

    fn tiny() -> ExperimentConfig {
        ExperimentConfig {
            models: vec![ModelId::I, ModelId::III],
            n: 64,
            methods: vec![CoverageMethod::Sddb, CoverageMethod::Nd],
            statistics: vec![CoverageStatistic::Mean],
            realizations: 4,
            replicates: 20,
            ..ExperimentConfig::desk(3)
        }
    }

    #[test]
    fn parallel_hits_match_sequential_core() {
        let cfg = tiny();
        let ours = coverage_study(&cfg).unwrap();
        let core = sddb_core::simharness::coverage_study(&cfg).unwrap();
        assert_eq!(ours.rows.len(), core.rows.len());
        for (a, b) in ours.rows.iter().zip(&core.rows) {
            assert_eq!((a.model, a.method, a.level, a.coverage), (b.model, b.method, b.level, b.coverage));
        }
    }

    #[test]
    fn sink_flushes_every_cell() {
        let cfg = tiny();
        let mut buf = Vec::new();
        let mut seen = Vec::new();
        {
            let mut sink = CsvSink::new(&mut buf).unwrap();
            coverage_study_with(&cfg, |rows| {
                seen.push(rows.len());
                sink.push(rows)
            })
            .unwrap();
        }
        assert_eq!(seen, vec![3; 4]);
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 13);
        assert!(text.starts_with(CSV_HEADER));
    }

    #[test]
    fn text_table_has_a_row_per_method() {
        let report = coverage_study(&tiny()).unwrap();
        let text = render_text(&report);
        assert!(text.contains("SDDB") && text.contains("ND") && text.contains("Model III"));
        assert!(text.contains("80.0") && text.contains("95.0"));
    }
}
