//! Spectral factorization through the cepstrum.
//!
//! A strictly positive density `f` on the grid is mapped to the Fourier
//! coefficients `a_k` of `log f`. Differentiating
//! `σ(2π)^{-1/2} C(z) = exp(a_0/2 + Σ_{k≥1} a_k z^k)` and comparing powers of
//! `z` gives recursions for the Wold moving-average coefficients `c_k` and,
//! through `B(z) = C(z)^{-1}`, for the autoregressive coefficients `b_k`.
//! The innovation variance is `σ² = 2π exp(a_0)`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fft;
use crate::grid::FrequencyGrid;
use crate::spectral::{EstimatorFamily, SpectralDensityEstimate};

/// Coefficients whose cumulative absolute tail is below this are dropped by [`trim_tail`].
pub const TAIL_TOLERANCE: f64 = 1e-10;

/// Fourier coefficients `a_0..=a_K` of `log f` (the sequence is symmetric in `k`).
#[derive(Debug, Clone, PartialEq)]
pub struct CepstralSequence {
    coefficients: Vec<f64>,
}

impl CepstralSequence {
    pub fn new(coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidParameter("empty cepstral sequence"));
        }
        if coefficients.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidParameter("non-finite cepstral coefficient"));
        }
        Ok(Self { coefficients })
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Largest index `K`.
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn a0(&self) -> f64 {
        self.coefficients[0]
    }
}

/// Wold moving-average coefficients `c` (with `c_0 = 1`), autoregressive
/// coefficients `b` (with `b_0 = -1`) and the innovation variance.
///
/// Generation in AR form reads `X_t = Σ_{j≥1} b_j X_{t-j} + ε_t`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WoldModel {
    ma: Vec<f64>,
    ar: Vec<f64>,
    sigma2: f64,
}

impl WoldModel {
    pub fn new(ma: Vec<f64>, ar: Vec<f64>, sigma2: f64) -> Result<Self> {
        if ma.first() != Some(&1.0) {
            return Err(Error::InvalidParameter("MA coefficients must start with c_0 = 1"));
        }
        if ar.first() != Some(&-1.0) {
            return Err(Error::InvalidParameter("AR coefficients must start with b_0 = -1"));
        }
        if !(sigma2 > 0.0 && sigma2.is_finite()) {
            return Err(Error::InvalidParameter("innovation variance must be positive"));
        }
        if ma.iter().chain(&ar).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite Wold coefficient"));
        }
        Ok(Self { ma, ar, sigma2 })
    }

    pub fn white_noise(sigma2: f64) -> Result<Self> {
        Self::new(vec![1.0], vec![-1.0], sigma2)
    }

    /// Model of a causal AR(p) fit `X_t = Σ φ_j X_{t-j} + ε_t`.
    ///
    /// The AR side is exact. The MA side is the power series of `1/Φ(z)`, cut
    /// once its tail is negligible (at most `max_ma + 1` terms).
    pub fn from_autoregression(phi: &[f64], sigma2: f64, max_ma: usize) -> Result<Self> {
        let mut ar = Vec::with_capacity(phi.len() + 1);
        ar.push(-1.0);
        ar.extend_from_slice(phi);
        let mut ma = vec![1.0];
        for k in 1..=max_ma {
            let c: f64 = phi
                .iter()
                .enumerate()
                .take(k)
                .map(|(j, p)| p * ma[k - 1 - j])
                .sum();
            ma.push(c);
            // Tail of a stable AR inverse decays geometrically; stop when it has.
            if k > phi.len() && ma[k + 1 - phi.len().max(1)..].iter().all(|v| v.abs() < 1e-14) {
                break;
            }
        }
        trim_tail(&mut ma, TAIL_TOLERANCE);
        Self::new(ma, ar, sigma2)
    }

    /// Moving-average coefficients `c_0..`.
    pub fn ma(&self) -> &[f64] {
        &self.ma
    }

    /// Autoregressive coefficients `b_0..` (`b_0 = -1`).
    pub fn ar(&self) -> &[f64] {
        &self.ar
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    /// Drops negligible trailing MA and AR coefficients.
    pub fn trimmed(mut self, tol: f64) -> Self {
        trim_tail(&mut self.ma, tol);
        trim_tail(&mut self.ar, tol);
        self
    }
}

/// `a_k ≈ (2π)^{-1} ∫ log f(λ) e^{-ikλ} dλ` by the rectangle rule at the grid frequencies.
pub fn cepstral_coefficients(f: &SpectralDensityEstimate, order: usize) -> Result<CepstralSequence> {
    cepstrum_of_values(f.values(), order)
}

pub(crate) fn cepstrum_of_values(values: &[f64], order: usize) -> Result<CepstralSequence> {
    let n = values.len();
    if order >= n / 2 {
        return Err(Error::GridTooCoarse { order, grid: n });
    }
    let spectrum = log_spectrum(values)?;
    CepstralSequence::new(spectrum[..=order].iter().map(|z| z.re / n as f64).collect())
}

/// All coefficients `a_0..=a_{N/2}`, the last at half weight: on the grid,
/// `a_{N/2}` appears once in `log f` but would enter twice through `C(z)C(1/z)`.
fn full_cepstrum(values: &[f64]) -> Result<CepstralSequence> {
    let n = values.len();
    let spectrum = log_spectrum(values)?;
    let mut coefficients: Vec<f64> = spectrum[..=n / 2].iter().map(|z| z.re / n as f64).collect();
    coefficients[n / 2] *= 0.5;
    CepstralSequence::new(coefficients)
}

fn log_spectrum(values: &[f64]) -> Result<Vec<Complex64>> {
    let mut logs = Vec::with_capacity(values.len());
    for (index, &value) in values.iter().enumerate() {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::NonPositiveDensity { index, value });
        }
        logs.push(value.ln());
    }
    Ok(fft::forward_real(&logs))
}

fn check_order(m: usize) {
    assert!(m >= 1, "at least one coefficient beyond the leading one is required");
}

/// `c_0 = 1`, `c_{k+1} = Σ_{j=0}^{k} (1 - j/(k+1)) a_{k+1-j} c_j` for `k < m`,
/// with `a_l = 0` beyond the order of `a`.
///
/// # Panics
/// If `m == 0`.
pub fn ma_coefficients(a: &CepstralSequence, m: usize) -> Vec<f64> {
    check_order(m);
    exp_recursion(a.coefficients(), m, 1.0)
}

/// `b_0 = -1`, `b_{k+1} = -Σ_{j=0}^{k} (1 - j/(k+1)) a_{k+1-j} b_j` for `k < m`.
///
/// # Panics
/// As [`ma_coefficients`].
pub fn ar_coefficients(a: &CepstralSequence, m: usize) -> Vec<f64> {
    check_order(m);
    exp_recursion(a.coefficients(), m, -1.0)
}

/// `out_0 = lead`, `out_i = (sign/i) Σ_{j<i} (i-j) a_{i-j} out_j`, where the
/// sign is `+` for the MA series (`lead = 1`) and `-` for the AR series (`lead = -1`).
fn exp_recursion(a: &[f64], m: usize, lead: f64) -> Vec<f64> {
    let sign = lead;
    // Reversed `l·a_l`, so each step is a dot product of two contiguous slices.
    let rev: Vec<f64> = a.iter().enumerate().rev().map(|(l, v)| l as f64 * v).collect();
    let top = rev.len() - 1;
    let mut out = Vec::with_capacity(m + 1);
    out.push(lead);
    for i in 1..=m {
        let start = i.saturating_sub(top);
        let acc = dot(&rev[top - (i - start)..top], &out[start..i]);
        out.push(sign * acc / i as f64);
    }
    out
}

pub(crate) fn dot(x: &[f64], y: &[f64]) -> f64 {
    let mut lanes = [0.0; 4];
    let (xc, yc) = (x.chunks_exact(4), y.chunks_exact(4));
    let (xr, yr) = (xc.remainder(), yc.remainder());
    for (a, b) in xc.zip(yc) {
        for k in 0..4 {
            lanes[k] += a[k] * b[k];
        }
    }
    let tail: f64 = xr.iter().zip(yr).map(|(a, b)| a * b).sum();
    (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]) + tail
}

/// `σ² = 2π exp(a_0)`.
pub fn innovation_variance(a0: f64) -> f64 {
    2.0 * PI * a0.exp()
}

/// Full factorization with `order` coefficients on each side (`N/2 − 1` when
/// `None`). The cepstrum is taken to order `order` when `order < N/2`.
/// Longer coefficient sequences use the whole cepstrum, Nyquist term at half
/// weight, so the reconstructed density matches `f` on the grid.
pub fn factorize(f: &SpectralDensityEstimate, order: Option<usize>) -> Result<WoldModel> {
    let m = order.unwrap_or_else(|| f.grid().max_order()).max(1);
    let a = if m > f.grid().max_order() { full_cepstrum(f.values())? } else { cepstral_coefficients(f, m)? };
    WoldModel::new(ma_coefficients(&a, m), ar_coefficients(&a, m), innovation_variance(a.a0()))
}

/// [`factorize`] at the default order followed by tail trimming at [`TAIL_TOLERANCE`].
pub fn factorize_trimmed(f: &SpectralDensityEstimate) -> Result<WoldModel> {
    Ok(factorize(f, None)?.trimmed(TAIL_TOLERANCE))
}

/// Removes trailing entries whose cumulative absolute sum is below `tol`.
/// The leading coefficient is always kept.
pub fn trim_tail(coefficients: &mut Vec<f64>, tol: f64) {
    let mut tail = 0.0;
    let mut keep = coefficients.len();
    while keep > 1 {
        let next = tail + coefficients[keep - 1].abs();
        if next >= tol {
            break;
        }
        tail = next;
        keep -= 1;
    }
    coefficients.truncate(keep);
}

/// Transfer function `Σ_k c_k e^{-ikλ_j}` at every grid frequency.
pub(crate) fn transfer(coefficients: &[f64], grid: FrequencyGrid) -> Vec<Complex64> {
    let n = grid.len();
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    // e^{-ikλ_j} has period N in k, so indices fold exactly.
    for (k, &c) in coefficients.iter().enumerate() {
        buf[k % n].re += c;
    }
    fft::forward(&mut buf);
    buf
}

/// `f(λ_j) = σ²(2π)^{-1} |Σ_k c_k e^{-ikλ_j}|²`.
pub fn reconstruct_density(w: &WoldModel, grid: FrequencyGrid) -> SpectralDensityEstimate {
    let scale = w.sigma2 / (2.0 * PI);
    let values = transfer(&w.ma, grid).into_iter().map(|z| scale * fft::norm_sqr(z)).collect();
    SpectralDensityEstimate::unfloored(grid, values, EstimatorFamily::Reconstructed)
        .expect("a real filter has a symmetric power transfer")
}

/// `γ(h) = σ² Σ_j c_j c_{j+h}` for `h = 0..=maxlag`.
pub fn implied_autocovariance(w: &WoldModel, maxlag: usize) -> Vec<f64> {
    let c = &w.ma;
    (0..=maxlag)
        .map(|h| {
            if h >= c.len() {
                0.0
            } else {
                w.sigma2 * c[..c.len() - h].iter().zip(&c[h..]).map(|(a, b)| a * b).sum::<f64>()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simharness::ModelId;

    fn grid(n: usize) -> FrequencyGrid {
        FrequencyGrid::new(n).unwrap()
    }

    fn ar1_density(phi: f64, n: usize) -> SpectralDensityEstimate {
        let g = grid(n);
        let v = g
            .frequencies()
            .map(|l| 1.0 / (2.0 * PI * (1.0 - 2.0 * phi * l.cos() + phi * phi)))
            .collect();
        SpectralDensityEstimate::unfloored(g, v, EstimatorFamily::Exact).unwrap()
    }

    fn ma1_density(theta: f64, n: usize) -> SpectralDensityEstimate {
        let g = grid(n);
        let v = g
            .frequencies()
            .map(|l| (1.0 + 2.0 * theta * l.cos() + theta * theta) / (2.0 * PI))
            .collect();
        SpectralDensityEstimate::unfloored(g, v, EstimatorFamily::Exact).unwrap()
    }

    /// Oracle: midpoint-rule quadrature of `(2π)^{-1}∫ log f(λ) cos(kλ) dλ`
    /// with a resolution independent of the grid.
    fn cepstrum_by_quadrature(log_f: impl Fn(f64) -> f64, k: usize) -> f64 {
        let m = 200_000;
        let h = 2.0 * PI / m as f64;
        (0..m)
            .map(|i| {
                let l = (i as f64 + 0.5) * h;
                log_f(l) * (k as f64 * l).cos()
            })
            .sum::<f64>()
            * h
            / (2.0 * PI)
    }

    #[test]
    fn white_noise_cepstrum() {
        let g = grid(64);
        let f = SpectralDensityEstimate::unfloored(g, vec![1.0 / (2.0 * PI); 64], EstimatorFamily::Exact)
            .unwrap();
        let a = cepstral_coefficients(&f, 10).unwrap();
        assert!((a.a0() + (2.0 * PI).ln()).abs() < 1e-14);
        assert!(a.coefficients()[1..].iter().all(|v| v.abs() < 1e-14));
        let w = factorize(&f, Some(10)).unwrap();
        assert!((w.sigma2() - 1.0).abs() < 1e-12);
        assert!(w.ma()[1..].iter().all(|v| v.abs() < 1e-14));
        assert!(w.ar()[1..].iter().all(|v| v.abs() < 1e-14));
    }

    #[test]
    fn ar1_cepstrum_matches_quadrature_and_closed_form() {
        let phi: f64 = 0.9;
        let a = cepstral_coefficients(&ar1_density(phi, 8192), 20).unwrap();
        let log_f = |l: f64| -(2.0 * PI).ln() - (1.0 - 2.0 * phi * l.cos() + phi * phi).ln();
        for k in 1..=6 {
            let quad = cepstrum_by_quadrature(log_f, k);
            assert!((a.coefficients()[k] - quad).abs() < 1e-9, "k={k}");
            assert!((a.coefficients()[k] - phi.powi(k as i32) / k as f64).abs() < 1e-12);
        }
        assert!((a.coefficients()[1] - 0.9).abs() < 1e-12);
        assert!((a.coefficients()[2] - 0.405).abs() < 1e-12);
    }

    #[test]
    fn ma1_cepstrum_matches_log_series() {
        let a = cepstral_coefficients(&ma1_density(0.5, 4096), 8).unwrap();
        for k in 1..=8 {
            let expected = (-1.0f64).powi(k as i32 + 1) * 0.5f64.powi(k as i32) / k as f64;
            assert!((a.coefficients()[k] - expected).abs() < 1e-12, "k={k}");
        }
        assert!((a.coefficients()[2] + 0.125).abs() < 1e-12);
    }

    #[test]
    fn ar1_recursions() {
        let a = cepstral_coefficients(&ar1_density(0.9, 8192), 64).unwrap();
        let c = ma_coefficients(&a, 64);
        let b = ar_coefficients(&a, 64);
        // Hand-unrolled: c_2 = a_2 + a_1 c_1 / 2.
        assert!((c[2] - (0.405 + 0.5 * 0.9 * 0.9)).abs() < 1e-12);
        for k in 0..=64 {
            assert!((c[k] - 0.9f64.powi(k as i32)).abs() < 1e-10, "c_{k}");
        }
        assert!((b[1] - 0.9).abs() < 1e-12);
        assert!(b[2..].iter().all(|v| v.abs() < 1e-10));
    }

    #[test]
    fn noninvertible_ma1_recovers_wold_form() {
        // X_t = e_t + 2 e_{t-1}, var(e) = 1.
        let w = factorize(&ma1_density(2.0, 8192), Some(60)).unwrap();
        assert!((w.ma()[1] - 0.5).abs() < 1e-10);
        assert!(w.ma()[2..].iter().all(|v| v.abs() < 1e-10));
        assert!((w.sigma2() - 4.0).abs() < 1e-10);
        for j in 1..=20 {
            let expected = -(-2.0f64).powi(-(j as i32));
            assert!((w.ar()[j] - expected).abs() < 1e-10, "b_{j}");
        }
        assert!((w.ar()[1] - 0.5).abs() < 1e-12 && (w.ar()[2] + 0.25).abs() < 1e-12);
    }

    #[test]
    fn innovation_variance_values() {
        assert!((innovation_variance(-(2.0 * PI).ln()) - 1.0).abs() < 1e-15);
        assert!((innovation_variance(0.0) - 2.0 * PI).abs() < 1e-15);
    }

    #[test]
    fn reconstruct_examples() {
        let g = grid(32);
        let f = reconstruct_density(&WoldModel::white_noise(1.0).unwrap(), g);
        assert!(f.values().iter().all(|v| (v - 1.0 / (2.0 * PI)).abs() < 1e-15));
        let w = WoldModel::new(vec![1.0, 0.5], vec![-1.0], 4.0).unwrap();
        let f = reconstruct_density(&w, g);
        assert!((f.at_zero() - 4.0 / (2.0 * PI) * 2.25).abs() < 1e-12);
        assert!((f.at_zero() - 1.432_394_487_827_058_6).abs() < 1e-12);
    }

    #[test]
    fn implied_autocovariance_examples() {
        let g = implied_autocovariance(&WoldModel::white_noise(1.0).unwrap(), 3);
        assert_eq!(g, vec![1.0, 0.0, 0.0, 0.0]);
        let w = WoldModel::new(vec![1.0, 0.5], vec![-1.0], 1.0).unwrap();
        assert_eq!(implied_autocovariance(&w, 2), vec![1.25, 0.5, 0.0]);
        let ma: Vec<f64> = (0..=400).map(|k| 0.9f64.powi(k)).collect();
        let w = WoldModel::new(ma, vec![-1.0, 0.9], 1.0).unwrap();
        for (h, g) in implied_autocovariance(&w, 10).iter().enumerate() {
            assert!((g - 0.9f64.powi(h as i32) / 0.19).abs() < 1e-6);
        }
    }

    #[test]
    fn errors() {
        let g = grid(16);
        let mut v = vec![1.0; 16];
        v[0] = 0.0;
        let f = SpectralDensityEstimate::unfloored(g, v, EstimatorFamily::Exact).unwrap();
        assert_eq!(
            cepstral_coefficients(&f, 3),
            Err(Error::NonPositiveDensity { index: 0, value: 0.0 })
        );
        let f = SpectralDensityEstimate::unfloored(g, vec![1.0; 16], EstimatorFamily::Exact).unwrap();
        assert_eq!(cepstral_coefficients(&f, 8), Err(Error::GridTooCoarse { order: 8, grid: 16 }));
        assert!(cepstral_coefficients(&f, 7).is_ok());
    }

    #[test]
    fn model_densities_round_trip_and_convolve() {
        for model in [ModelId::I, ModelId::II] {
            let g = grid(8192);
            let f = model.density(g);
            // The MA tail of Model II decays like 0.997^k, so ask for 3N/2 terms.
            let w = factorize(&f, Some(12_288)).unwrap();
            let back = reconstruct_density(&w, g);
            let err = f
                .values()
                .iter()
                .zip(back.values())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            assert!(err < 1e-8, "{model:?}: {err}");
            for k in 0..=500 {
                let s: f64 = (0..=k).map(|j| -w.ar()[j] * w.ma()[k - j]).sum();
                let target = if k == 0 { 1.0 } else { 0.0 };
                assert!((s - target).abs() < 1e-10, "{model:?} k={k}: {s}");
            }
        }
    }

    #[test]
    fn scaling_shifts_only_variance() {
        let f = ModelId::II.density(grid(1024));
        let scaled = SpectralDensityEstimate::unfloored(
            f.grid(),
            f.values().iter().map(|v| 3.5 * v).collect(),
            EstimatorFamily::Exact,
        )
        .unwrap();
        let w = factorize(&f, Some(200)).unwrap();
        let ws = factorize(&scaled, Some(200)).unwrap();
        assert!((ws.sigma2() / w.sigma2() - 3.5).abs() < 1e-12);
        for (a, b) in w.ma().iter().zip(ws.ma()) {
            assert!((a - b).abs() < 1e-10);
        }
        for (a, b) in w.ar().iter().zip(ws.ar()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn trimming_drops_negligible_tail() {
        let mut v = vec![1.0, 0.5, 1e-3, 1e-12, 1e-13, 0.0];
        trim_tail(&mut v, 1e-10);
        assert_eq!(v, vec![1.0, 0.5, 1e-3]);
        let mut v = vec![1.0, 0.0];
        trim_tail(&mut v, 1e-10);
        assert_eq!(v, vec![1.0]);
    }

    #[test]
    fn autoregression_model_inverts_polynomial() {
        let w = WoldModel::from_autoregression(&[0.5, 0.2], 2.0, 1000).unwrap();
        assert_eq!(w.ar(), &[-1.0, 0.5, 0.2]);
        for k in 2..w.ma().len() {
            let rec = 0.5 * w.ma()[k - 1] + 0.2 * w.ma()[k - 2];
            assert!((w.ma()[k] - rec).abs() < 1e-15);
        }
        assert!(w.ma().len() < 200);
    }
}
