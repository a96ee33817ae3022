use alloc::vec::Vec;

use super::distribution::BootstrapReplicateSet;
use crate::error::{Error, Result};
use crate::statistics::normal_quantile;

/// Fewest replicates an interval is built from.
pub const MIN_REPLICATES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum IntervalMode {
    /// Quantiles of `T* − center`.
    BasicRoot,
    /// Quantiles of `(T* − center)/ŝ*`, rescaled by `ŝ`.
    Studentized,
}

/// Two-sided interval at level `1 − alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConfidenceInterval {
    pub alpha: f64,
    pub lower: f64,
    pub upper: f64,
}

impl ConfidenceInterval {
    pub fn contains(&self, v: f64) -> bool {
        self.lower <= v && v <= self.upper
    }
}

/// Linear interpolation between order statistics (`h = (B−1)p`).
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h as usize;
    if lo + 1 >= sorted.len() {
        return sorted[sorted.len() - 1];
    }
    sorted[lo] + (h - lo as f64) * (sorted[lo + 1] - sorted[lo])
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter("alpha must lie in (0, 1)"))
    }
}

/// Basic-root: `[T̂ − q_{1−α/2}, T̂ − q_{α/2}]`; studentized: `[T̂ − q_{1−α/2}ŝ, T̂ − q_{α/2}ŝ]`.
pub fn confidence_interval(r: &BootstrapReplicateSet, alpha: f64, mode: IntervalMode) -> Result<ConfidenceInterval> {
    check_alpha(alpha)?;
    if r.values.len() < MIN_REPLICATES {
        return Err(Error::TooFewReplicates { got: r.values.len(), min: MIN_REPLICATES });
    }
    let (mut roots, scale): (Vec<f64>, f64) = match mode {
        IntervalMode::BasicRoot => (r.values.iter().map(|v| v - r.center).collect(), 1.0),
        IntervalMode::Studentized => {
            let (ses, se) = match (&r.standard_errors, r.original_se) {
                (Some(ses), Some(se)) => (ses, se),
                _ => return Err(Error::InvalidParameter("studentized interval needs standard errors")),
            };
            (r.values.iter().zip(ses).map(|(v, s)| (v - r.center) / s).collect(), se)
        }
    };
    roots.sort_by(f64::total_cmp);
    let lo = quantile_sorted(&roots, alpha / 2.0);
    let hi = quantile_sorted(&roots, 1.0 - alpha / 2.0);
    Ok(ConfidenceInterval { alpha, lower: r.original - hi * scale, upper: r.original - lo * scale })
}

/// `T̂ ± z_{1−α/2}·se`.
pub fn normal_interval(estimate: f64, se: f64, alpha: f64) -> Result<ConfidenceInterval> {
    check_alpha(alpha)?;
    let z = normal_quantile(1.0 - alpha / 2.0);
    Ok(ConfidenceInterval { alpha, lower: estimate - z * se, upper: estimate + z * se })
}
