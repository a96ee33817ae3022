//! Spectral-density-driven bootstrap for stationary time series.
//!
//! A spectral density estimate is factorized through its cepstrum into the
//! Wold moving-average and autoregressive representations, which then drive
//! i.i.d. pseudo-innovations to produce bootstrap series.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod bootstrap;
mod error;
pub mod factorization;
pub mod fft;
mod grid;
mod rng;
mod series;
pub mod simharness;
pub mod spectral;
pub mod statistics;

pub use error::{Error, Result};
pub use factorization::{CepstralSequence, WoldModel};
pub use grid::FrequencyGrid;
pub use rng::RngStream;
pub use series::TimeSeries;
pub use spectral::SpectralDensityEstimate;
