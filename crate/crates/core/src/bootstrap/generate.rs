use alloc::vec;
use alloc::vec::Vec;

use super::innovations::InnovationGenerator;
use crate::error::{Error, Result};
use crate::factorization::{dot, WoldModel};
use crate::rng::RngStream;
use crate::series::TimeSeries;

/// Path values beyond this magnitude signal an unstable AR recursion.
pub const OVERFLOW_GUARD: f64 = 1e12;

/// `1000 + 10·(number of AR coefficients)`.
pub fn default_burn_in(ar_len: usize) -> usize {
    1000 + 10 * ar_len
}

/// `X*_t = Σ_{j=0}^{M} c_j ε*_{t−j} + mean`, with `M + n` innovations so the
/// first output already has the full filter behind it.
pub fn sddb_generate_ma(
    w: &WoldModel,
    n: usize,
    g: &InnovationGenerator,
    mean: f64,
    rng: &mut RngStream,
) -> Result<TimeSeries> {
    g.check_variance(w.sigma2())?;
    TimeSeries::new(generate_ma(w.ma(), n, g, mean, rng))
}

pub(crate) fn generate_ma(c: &[f64], n: usize, g: &InnovationGenerator, mean: f64, rng: &mut RngStream) -> Vec<f64> {
    let m = c.len() - 1;
    let eps: Vec<f64> = (0..m + n).map(|_| g.draw(rng)).collect();
    let reversed: Vec<f64> = c.iter().rev().copied().collect();
    // Output t sits on innovation index t + m.
    (0..n).map(|t| dot(&reversed, &eps[t..=t + m]) + mean).collect()
}

/// `X*_t − mean = Σ_{j≥1} b_j (X*_{t−j} − mean) + ε*_t`, started at zero and
/// run through `burn_in` discarded steps (default [`default_burn_in`]).
pub fn sddb_generate_ar(
    w: &WoldModel,
    n: usize,
    g: &InnovationGenerator,
    mean: f64,
    rng: &mut RngStream,
    burn_in: Option<usize>,
) -> Result<TimeSeries> {
    g.check_variance(w.sigma2())?;
    let burn = burn_in.unwrap_or_else(|| default_burn_in(w.ar().len() - 1));
    TimeSeries::new(generate_ar(&w.ar()[1..], &[], n, g, mean, rng, burn)?)
}

/// ARMA recursion `Y_t = Σ φ_j Y_{t−j} + Σ_{k} θ_k ε_{t−k}` (`θ_0 = 1` implied
/// when `ma` is empty) plus `mean`.
pub(crate) fn generate_ar(
    phi: &[f64],
    ma: &[f64],
    n: usize,
    g: &InnovationGenerator,
    mean: f64,
    rng: &mut RngStream,
    burn: usize,
) -> Result<Vec<f64>> {
    let total = burn + n;
    let p = phi.len();
    let q = ma.len().saturating_sub(1);
    let mut y = vec![0.0; total];
    let mut eps = vec![0.0; q + 1];
    for t in 0..total {
        let e = g.draw(rng);
        let mut v = if ma.is_empty() {
            e
        } else {
            eps.rotate_right(1);
            eps[0] = e;
            ma.iter().zip(&eps).map(|(a, b)| a * b).sum()
        };
        for j in 0..p.min(t) {
            v += phi[j] * y[t - 1 - j];
        }
        if !(v.abs() <= OVERFLOW_GUARD) {
            return Err(Error::ExplosivePath { step: t });
        }
        y[t] = v;
    }
    Ok(y[burn..].iter().map(|v| v + mean).collect())
}

/// ARMA-form generation from a pre-whitened split: AR part `phi`, MA part from
/// the residual factorization `ma`.
pub fn generate_arma(
    phi: &[f64],
    ma: &WoldModel,
    n: usize,
    g: &InnovationGenerator,
    mean: f64,
    rng: &mut RngStream,
    burn_in: Option<usize>,
) -> Result<TimeSeries> {
    g.check_variance(ma.sigma2())?;
    let burn = burn_in.unwrap_or_else(|| default_burn_in(phi.len() + ma.ma().len()));
    TimeSeries::new(generate_ar(phi, ma.ma(), n, g, mean, rng, burn)?)
}
