use std::f64::consts::PI;

use proptest::prelude::*;
use sddb_core::factorization::{factorize, reconstruct_density};
use sddb_core::spectral::{ar_spectral_estimate, lag_window_estimate, EstimatorFamily, Estimator, LagKernel, OrderSelection};
use sddb_core::{FrequencyGrid, RngStream, SpectralDensityEstimate, TimeSeries};

/// `(1 − φ₁z − φ₂z²)X = (1 + θz)ε` with complex AR roots of modulus `1/r`.
#[derive(Debug, Clone, Copy)]
struct Arma {
    phi: [f64; 2],
    theta: f64,
    sigma2: f64,
}

fn arma() -> impl Strategy<Value = Arma> {
    (0.0f64..0.9, 0.0f64..PI, -0.9f64..0.9, 0.1f64..10.0).prop_map(|(r, w, theta, sigma2)| Arma {
        phi: [2.0 * r * w.cos(), -r * r],
        theta,
        sigma2,
    })
}

impl Arma {
    fn density(&self, n: usize) -> SpectralDensityEstimate {
        let g = FrequencyGrid::new(n).unwrap();
        let values = (0..n)
            .map(|j| {
                let l = g.frequency(j);
                let ma = 1.0 + self.theta * self.theta + 2.0 * self.theta * l.cos();
                let (re, im) = (
                    1.0 - self.phi[0] * l.cos() - self.phi[1] * (2.0 * l).cos(),
                    self.phi[0] * l.sin() + self.phi[1] * (2.0 * l).sin(),
                );
                self.sigma2 / (2.0 * PI) * ma / (re * re + im * im)
            })
            .collect::<Vec<_>>();
        let sym = (0..n).map(|j| 0.5 * (values[j] + values[(n - j) % n])).collect();
        SpectralDensityEstimate::unfloored(g, sym, EstimatorFamily::Exact).unwrap()
    }

    /// `ψ_k` of `X = Σ ψ_k ε_{t−k}` by the ARMA recursion.
    fn psi(&self, m: usize) -> Vec<f64> {
        let mut psi = vec![1.0];
        for k in 1..=m {
            let mut v = if k == 1 { self.theta } else { 0.0 };
            v += self.phi[0] * psi[k - 1];
            if k >= 2 {
                v += self.phi[1] * psi[k - 2];
            }
            psi.push(v);
        }
        psi
    }
}

fn series(seed: u64, n: usize, phi: f64) -> TimeSeries {
    let mut rng = RngStream::new(seed, 0);
    let mut v = vec![0.0; n];
    for t in 0..n {
        v[t] = rng.standard_normal() + if t > 0 { phi * v[t - 1] } else { 0.0 };
    }
    TimeSeries::new(v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn arma_density_factorizes_to_its_wold_coefficients(m in arma()) {
        let f = m.density(2048);
        let w = factorize(&f, None).unwrap();
        prop_assert!((w.sigma2() / m.sigma2 - 1.0).abs() < 1e-10);
        for (k, (c, p)) in w.ma().iter().zip(m.psi(300)).enumerate() {
            prop_assert!((c - p).abs() < 1e-8 * (1.0 + p.abs()), "k={} {} vs {}", k, c, p);
        }
    }

    #[test]
    fn convolution_identity_and_round_trip(m in arma()) {
        let f = m.density(2048);
        let w = factorize(&f, None).unwrap();
        let (c, b) = (w.ma(), w.ar());
        for k in 0..c.len() {
            let s: f64 = (0..=k).map(|j| -b[j] * c[k - j]).sum();
            prop_assert!((s - if k == 0 { 1.0 } else { 0.0 }).abs() < 1e-10, "k={}: {}", k, s);
        }
        let back = reconstruct_density(&w, f.grid());
        for (a, r) in f.values().iter().zip(back.values()) {
            prop_assert!(((a - r) / a).abs() < 1e-8);
        }
    }

    #[test]
    fn scaling_a_density_only_scales_the_variance(m in arma(), s in 1e-3f64..1e3) {
        let f = m.density(1024);
        let scaled = SpectralDensityEstimate::unfloored(
            f.grid(),
            f.values().iter().map(|v| s * v).collect(),
            EstimatorFamily::External,
        )
        .unwrap();
        let (w, ws) = (factorize(&f, None).unwrap(), factorize(&scaled, None).unwrap());
        prop_assert!((ws.sigma2() / w.sigma2() / s - 1.0).abs() < 1e-12);
        for (a, b) in w.ma().iter().zip(ws.ma()).chain(w.ar().iter().zip(ws.ar())) {
            prop_assert!((a - b).abs() < 1e-10 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn ar_estimate_factorizes_to_its_coefficients(seed in any::<u64>(), p in 1usize..6, phi in -0.9f64..0.9) {
        let x = series(seed, 200, phi);
        let (f, fit) = ar_spectral_estimate(&x, OrderSelection::Fixed(p), FrequencyGrid::default()).unwrap();
        prop_assume!(f.values().iter().all(|v| *v > f.floor()));
        let w = factorize(&f, None).unwrap();
        for k in 1..=50 {
            let expected = fit.coefficients.get(k - 1).copied().unwrap_or(0.0);
            prop_assert!((w.ar()[k] - expected).abs() < 1e-8, "b_{} = {} vs {}", k, w.ar()[k], expected);
        }
    }

    #[test]
    fn positive_lag_window_estimate_is_a_finite_moving_average(seed in any::<u64>(), t in 1usize..8, phi in -0.7f64..0.7) {
        let x = series(seed, 256, phi);
        let f = lag_window_estimate(&x, LagKernel::Bartlett, t, FrequencyGrid::default()).unwrap();
        prop_assume!(f.values().iter().all(|v| *v > f.floor()));
        let w = factorize(&f, Some(200)).unwrap();
        for (k, c) in w.ma().iter().enumerate().skip(t + 1) {
            prop_assert!(c.abs() < 1e-8, "c_{} = {}", k, c);
        }
    }

    #[test]
    fn estimates_are_floored_and_symmetric(seed in any::<u64>(), phi in -0.95f64..0.95, which in 0usize..5) {
        let x = series(seed, 128, phi);
        let estimator = match which {
            0 => Estimator::Ar { order: OrderSelection::default() },
            1 => Estimator::LagWindow { kernel: LagKernel::Trapezoid, truncation: None },
            2 => Estimator::Smoothed { bandwidth: Default::default() },
            3 => Estimator::default(),
            _ => Estimator::Cepstrum { threshold: None },
        };
        let g = FrequencyGrid::new(512).unwrap();
        let f = estimator.estimate(&x, g).unwrap();
        prop_assert!(f.floor() > 0.0);
        let v = f.values();
        for j in 0..512 {
            prop_assert!(v[j] >= f.floor());
            prop_assert_eq!(v[j], v[(512 - j) % 512]);
        }
    }
}

#[test]
fn factorization_is_deterministic() {
    let f = Arma { phi: [0.5, -0.3], theta: 0.4, sigma2: 2.0 }.density(4096);
    assert_eq!(factorize(&f, None).unwrap(), factorize(&f, None).unwrap());
}
