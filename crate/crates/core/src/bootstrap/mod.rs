//! Pseudo-series generation, competitor resampling schemes, replicate sets
//! and bootstrap confidence intervals.

mod distribution;
mod generate;
mod innovations;
mod interval;
mod resample;

pub use distribution::{
    bootstrap_distribution, bootstrap_distribution_studentized, replicate, BootstrapReplicateSet,
    BootstrapWorld, GenerationForm, Method,
};
pub use generate::{default_burn_in, generate_arma, sddb_generate_ar, sddb_generate_ma, OVERFLOW_GUARD};
pub use innovations::{estimate_kappa4, gen_innovations, FourthMoment, InnovationGenerator, InnovationKind};
pub(crate) use innovations::kappa4_of;
pub use interval::{
    confidence_interval, normal_interval, quantile_sorted, ConfidenceInterval, IntervalMode,
    MIN_REPLICATES,
};
pub use resample::{ar_sieve_bootstrap, default_block_length, moving_block_bootstrap, ArSieve};
