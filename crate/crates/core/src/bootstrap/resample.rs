use alloc::vec::Vec;

use super::generate::{default_burn_in, generate_ar};
use super::innovations::InnovationGenerator;
use crate::error::{Error, Result};
use crate::factorization::WoldModel;
use crate::rng::RngStream;
use crate::series::TimeSeries;
use crate::spectral::{fit_autoregression, ArFit, OrderSelection};

/// Longest MA expansion kept for the AR-sieve model's implied moments.
const SIEVE_MA_LIMIT: usize = 20_000;

/// Fitted AR-sieve: Yule–Walker AR fit plus its centered residual pool.
#[derive(Debug, Clone)]
pub struct ArSieve {
    pub fit: ArFit,
    /// `b_j = φ̂_j` and the MA inverse of the fitted polynomial.
    pub model: WoldModel,
    pub innovations: InnovationGenerator,
}

impl ArSieve {
    pub fn fit(x: &TimeSeries, order: OrderSelection) -> Result<Self> {
        x.require_len(32)?;
        let fit = fit_autoregression(x, order)?;
        let model = WoldModel::from_autoregression(&fit.coefficients, fit.sigma2, SIEVE_MA_LIMIT)?;
        let innovations = InnovationGenerator::empirical(&fit.residuals)?;
        Ok(Self { fit, model, innovations })
    }

    /// `X*_t − x̄ = Σ φ̂_j (X*_{t−j} − x̄) + e*_t` with resampled residuals.
    pub fn generate(&self, n: usize, rng: &mut RngStream, burn_in: Option<usize>) -> Result<TimeSeries> {
        let burn = burn_in.unwrap_or_else(|| default_burn_in(self.fit.order()));
        TimeSeries::new(generate_ar(&self.fit.coefficients, &[], n, &self.innovations, self.fit.mean, rng, burn)?)
    }
}

/// One AR-sieve pseudo-series of the same length as `x`, order by AIC.
pub fn ar_sieve_bootstrap(x: &TimeSeries, rng: &mut RngStream) -> Result<TimeSeries> {
    ArSieve::fit(x, OrderSelection::default())?.generate(x.len(), rng, None)
}

/// `⌈n^{1/3}⌉`.
pub fn default_block_length(n: usize) -> usize {
    let mut l = 1;
    while l * l * l < n {
        l += 1;
    }
    l
}

/// Moving block bootstrap: `⌈n/l⌉` blocks `x[s..s+l]` with `s` uniform on
/// `0..=n−l`, concatenated and cut to length `n`.
pub fn moving_block_bootstrap(x: &TimeSeries, l: usize, rng: &mut RngStream) -> Result<TimeSeries> {
    let n = x.len();
    if l == 0 || l > n {
        return Err(Error::InvalidParameter("block length must satisfy 1 <= l <= n"));
    }
    let mut out = Vec::with_capacity(n + l);
    while out.len() < n {
        let s = rng.below(n - l + 1);
        out.extend_from_slice(&x[s..s + l]);
    }
    out.truncate(n);
    TimeSeries::new(out)
}
