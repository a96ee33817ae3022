//! Simulation design: data-generating models, coverage experiments and
//! coefficient tables.

mod experiment;
mod models;
mod table;

pub use experiment::{
    coverage_study, realization_stream, run_cell, CellKey, CellOutcome, CellPlan, ConfigIssue,
    CoverageMethod, CoverageReport, CoverageRow, CoverageStatistic, ExperimentConfig,
};
pub use models::{simulate_model, true_rho2, unit_t3, ModelId, ModelSpec, MODEL_BURN_IN, TRUTH_GRID};
pub use table::{coefficient_table, CoefficientRow};
