use serde::Serialize;

use super::oscillatory::{tail, Wave};
use crate::error::{Error, Result};
use crate::exec;
use crate::sum::CompensatedSum;

pub const INNER_MAX_K: u64 = 100_000_000;
/// Terms summed directly before the Euler-Maclaurin tail.
pub const INNER_DIRECT_TERMS: u64 = 1_000_000;

fn check(func: &'static str, n_abs: u64, d: u32) -> Result<()> {
    if n_abs == 0 || d == 0 {
        return Err(Error::domain(func, format!("need n_abs >= 1 and d >= 1, got ({n_abs}, {d})")));
    }
    Ok(())
}

/// `Σ_{k=1}^K cos√k / (n + k)^{d+1}`.
pub fn inner_series(n_abs: u64, d: u32, k: u64) -> Result<f64> {
    check("inner_series", n_abs, d)?;
    if k == 0 || k > INNER_MAX_K {
        return Err(Error::budget("inner_series", format!("K = {k} outside 1..={INNER_MAX_K}")));
    }
    let n = n_abs as f64;
    let p = -(d as i32 + 1);
    let mut acc = CompensatedSum::new();
    for j in 1..=k {
        let jf = j as f64;
        acc.add(jf.sqrt().cos() * (n + jf).powi(p));
    }
    Ok(acc.value())
}

/// `∫_K^∞ (n + u)^{-d-1} du`, which bounds the absolute tail beyond `K`.
pub fn inner_series_tail_bound(n_abs: u64, d: u32, k: u64) -> f64 {
    (n_abs as f64 + k as f64).powi(-(d as i32)) / d as f64
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InnerSeriesLimit {
    pub n_abs: u64,
    pub d: u32,
    pub value: f64,
    pub direct_terms: u64,
    pub tail: f64,
    pub tail_error: f64,
}

/// The full series: `INNER_DIRECT_TERMS` terms summed directly, the rest by
/// Euler-Maclaurin, `Σ_{k>K} f(k) ≈ ∫_K^∞ f - f(K)/2 - f'(K)/12`, with the
/// integral taken in `v = √u` as an oscillatory tail.
pub fn inner_series_limit(n_abs: u64, d: u32) -> Result<InnerSeriesLimit> {
    let k = INNER_DIRECT_TERMS;
    let head = inner_series(n_abs, d, k)?;
    let n = n_abs as f64;
    let kf = k as f64;
    let q = d as i32 + 1;
    let g = |v: f64| 2.0 * v * (n + v * v).powi(-q);
    let (integral, ierr) = tail(&g, Wave::Cos, kf.sqrt());
    let s = kf.sqrt();
    let f = s.cos() * (n + kf).powi(-q);
    let fp = -s.sin() / (2.0 * s) * (n + kf).powi(-q) - q as f64 * s.cos() * (n + kf).powi(-q - 1);
    let t = integral - 0.5 * f - fp / 12.0;
    Ok(InnerSeriesLimit {
        n_abs,
        d,
        value: head + t,
        direct_terms: k,
        tail: t,
        tail_error: ierr + fp.abs() / (12.0 * s),
    })
}

/// `|T(n)| n^{d+1/4}` over a list of `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InnerSeriesScan {
    pub d: u32,
    pub n: Vec<u64>,
    pub values: Vec<f64>,
    pub normalized: Vec<f64>,
    /// `max(normalized) / min(normalized)`.
    pub ratio: f64,
}

pub fn inner_series_scan(d: u32, ns: &[u64]) -> Result<InnerSeriesScan> {
    if ns.is_empty() {
        return Err(Error::Config("inner series scan needs at least one n".into()));
    }
    let lims = exec::try_map(ns, |&n| inner_series_limit(n, d))?;
    let values: Vec<f64> = lims.iter().map(|l| l.value).collect();
    let normalized: Vec<f64> =
        ns.iter().zip(&values).map(|(&n, v)| v.abs() * (n as f64).powf(d as f64 + 0.25)).collect();
    let max = normalized.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = normalized.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(InnerSeriesScan { d, n: ns.to_vec(), values, normalized, ratio: max / min })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn first_term() {
        assert_relative_eq!(inner_series(1, 1, 1).unwrap(), 1f64.cos() / 4.0, max_relative = 1e-15);
        assert!(inner_series(0, 1, 1).is_err());
    }

    #[test]
    fn tail_bound_certifies_partial_sums() {
        for &(n, d) in &[(10u64, 1u32), (100, 2)] {
            let a = inner_series(n, d, 1000).unwrap();
            let b = inner_series(n, d, 100_000).unwrap();
            assert!((b - a).abs() <= inner_series_tail_bound(n, d, 1000));
        }
    }

    #[test]
    fn limit_matches_long_direct_sum() {
        // Direct sum to 4·10⁷ plus its own tail bound brackets the limit.
        let lim = inner_series_limit(10, 1).unwrap();
        let far = inner_series(10, 1, 40_000_000).unwrap();
        assert!((lim.value - far).abs() < 2.0 * inner_series_tail_bound(10, 1, 40_000_000) / 1e3 + 1e-13);
        assert!(lim.tail_error < 1e-12);
    }
}
