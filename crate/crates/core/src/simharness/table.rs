use alloc::vec::Vec;
use core::ops::RangeInclusive;

use crate::error::Result;
use crate::factorization::factorize;
use crate::grid::FrequencyGrid;
use crate::series::TimeSeries;
use crate::spectral::Estimator;

/// MA and AR coefficients of one estimator's factorization over a lag range.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientRow {
    pub estimator: &'static str,
    pub lags: RangeInclusive<usize>,
    pub c: Vec<f64>,
    pub b: Vec<f64>,
}

pub fn coefficient_table(
    x: &TimeSeries,
    estimators: &[Estimator],
    grid: FrequencyGrid,
    lags: RangeInclusive<usize>,
) -> Result<Vec<CoefficientRow>> {
    x.require_len(32)?;
    estimators
        .iter()
        .map(|e| {
            let w = factorize(&e.estimate(x, grid)?, None)?;
            let pick = |s: &[f64]| lags.clone().map(|k| s.get(k).copied().unwrap_or(0.0)).collect();
            Ok(CoefficientRow { estimator: e.name(), lags: lags.clone(), c: pick(w.ma()), b: pick(w.ar()) })
        })
        .collect()
}
