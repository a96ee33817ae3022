
#[allow(unused_imports)] // inherent when std is linked
use num_traits::Float;

use super::check_variance;
use crate::error::Result;
use crate::series::{autocovariances, TimeSeries};

/// Smallest `m` with `|ρ̂(m+k)| < 2·√(log10 n / n)` for `k = 1..=K_n`,
/// `K_n = max(5, ⌈√log10 n⌉)`, clamped to `[1, n/4]`.
pub fn politis_truncation(x: &TimeSeries) -> Result<usize> {
    x.require_len(32)?;
    let n = x.len();
    let cap = n / 4;
    let kn = 5usize.max((n as f64).log10().sqrt().ceil() as usize);
    let bound = 2.0 * ((n as f64).log10() / n as f64).sqrt();
    let gamma = autocovariances(x, (cap + kn).min(n - 1));
    check_variance(x, gamma[0])?;
    let rho = |h: usize| gamma.get(h).map_or(0.0, |g| g / gamma[0]);
    let m = (0..=cap)
        .find(|&m| (1..=kn).all(|k| rho(m + k).abs() < bound))
        .unwrap_or(cap);
    Ok(m.clamp(1, cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simharness::{simulate_model, ModelId, ModelSpec};
    use crate::RngStream;
    use alloc::vec::Vec;

    fn iid(n: usize, s: u64) -> TimeSeries {
        let mut rng = RngStream::new(31, s);
        TimeSeries::new((0..n).map(|_| rng.standard_normal()).collect()).unwrap()
    }

    #[test]
    fn iid_data_gives_small_lag() {
        let small = (0..50).filter(|&s| politis_truncation(&iid(512, s)).unwrap() <= 3).count();
        assert!(small > 25, "{small}");
    }

    #[test]
    fn persistence_increases_lag() {
        let mut larger = 0;
        for s in 0..20 {
            let ar = simulate_model(&ModelSpec::new(ModelId::I, 512), &mut RngStream::new(32, s));
            let m_ar = politis_truncation(&ar).unwrap();
            if m_ar > politis_truncation(&iid(512, s)).unwrap() {
                larger += 1;
            }
        }
        assert_eq!(larger, 20);
    }

    #[test]
    fn short_series_within_cap() {
        let x: Vec<f64> = iid(32, 9).iter().map(|v| 5.0 + v).collect();
        let m = politis_truncation(&TimeSeries::new(x).unwrap()).unwrap();
        assert!((1..=8).contains(&m));
    }
}
