use alloc::vec::Vec;
use core::ops::Deref;

use crate::error::{Error, Result};

/// Ordered, finite, real-valued observations `x_1..x_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
}

impl TimeSeries {
    pub const MIN_LEN: usize = 8;

    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < Self::MIN_LEN {
            return Err(Error::SeriesTooShort { len: values.len(), min: Self::MIN_LEN });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample(i));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.values
    }

    pub fn mean(&self) -> f64 {
        mean(&self.values)
    }

    /// Deviations from the sample mean.
    pub fn centered(&self) -> Vec<f64> {
        centered(&self.values)
    }

    pub(crate) fn require_len(&self, min: usize) -> Result<()> {
        if self.values.len() < min {
            Err(Error::SeriesTooShort { len: self.values.len(), min })
        } else {
            Ok(())
        }
    }
}

impl Deref for TimeSeries {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.values
    }
}

pub(crate) fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

pub(crate) fn centered(x: &[f64]) -> Vec<f64> {
    let m = mean(x);
    x.iter().map(|v| v - m).collect()
}

/// Sample autocovariances `γ̂(0..=maxlag)` with divisor `n`.
pub(crate) fn autocovariances(x: &[f64], maxlag: usize) -> Vec<f64> {
    let y = centered(x);
    let n = y.len();
    (0..=maxlag.min(n - 1))
        .map(|h| y[..n - h].iter().zip(&y[h..]).map(|(a, b)| a * b).sum::<f64>() / n as f64)
        .collect()
}
