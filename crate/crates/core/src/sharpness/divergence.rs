use std::f64::consts::PI;

use serde::Serialize;

use super::harmonic::harmonic_number;
use super::trig::{trig_series_limit, TrigKind};
use crate::error::{Error, Result};
use crate::hardy::{dyadic_points, linear_fit};
use crate::special_fn::{asymptotic_phi, hermite_laguerre_sweep, AlphaIndex, EvalPoint};
use crate::sum::{csum, CompensatedSum};

pub const DIVERGENCE_MAX_1D: usize = 10_000_000;
pub const DIVERGENCE_MAX_2D: usize = 10_000;
/// Shells beyond this use `asymptotic_phi` in place of `φ_k` in d = 2.
pub const SURROGATE_FROM_2D: usize = 1000;
/// Smallest `N` in the log fit.
pub const FIT_FROM: usize = 100;

/// Shell sums of `|φ_n(x)| / (|n|+1)^β` and the fit `S(N) ≈ c₁ ln N + c₂`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivergenceReport {
    pub alpha: Vec<f64>,
    pub x: Vec<f64>,
    pub beta: f64,
    pub nmax: usize,
    /// Dyadic sample points `N` and `S(N)` (sum over `|n| <= N`).
    pub n: Vec<usize>,
    pub partial_sums: Vec<f64>,
    /// Log-fit over the samples with `N >= 100`.
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// `S(Nmax) - S(Nmax/2)`.
    pub cauchy_tail: f64,
    /// First index replaced by the asymptotic surrogate, if any.
    pub surrogate_from: Option<usize>,
}

fn abs_sweep(alpha: f64, x: f64, nmax: usize, surrogate: Option<usize>) -> Result<Vec<f64>> {
    let direct = surrogate.map_or(nmax, |s| s.min(nmax));
    let mut v: Vec<f64> = hermite_laguerre_sweep(alpha, x, direct)?.into_iter().map(f64::abs).collect();
    for k in direct + 1..=nmax {
        v.push(asymptotic_phi(alpha, k, x)?.abs());
    }
    Ok(v)
}

pub fn divergence_demo(alpha: &AlphaIndex, x: &EvalPoint, beta: f64, nmax: usize) -> Result<DivergenceReport> {
    let d = alpha.dim();
    if x.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: x.dim() });
    }
    if nmax < 2 * FIT_FROM {
        return Err(Error::domain("divergence_demo", format!("Nmax = {nmax} must be at least {}", 2 * FIT_FROM)));
    }
    let (shells, surrogate_from) = match d {
        1 => {
            if nmax > DIVERGENCE_MAX_1D {
                return Err(Error::budget("divergence_demo", format!("Nmax = {nmax} exceeds {DIVERGENCE_MAX_1D}")));
            }
            (abs_sweep(alpha.get(0), x.coords()[0], nmax, None)?, None)
        }
        2 => {
            if nmax > DIVERGENCE_MAX_2D {
                return Err(Error::budget("divergence_demo", format!("Nmax = {nmax} exceeds {DIVERGENCE_MAX_2D}")));
            }
            let sur = (nmax > SURROGATE_FROM_2D).then_some(SURROGATE_FROM_2D + 1);
            let a = abs_sweep(alpha.get(0), x.coords()[0], nmax, Some(SURROGATE_FROM_2D))?;
            let b = abs_sweep(alpha.get(1), x.coords()[1], nmax, Some(SURROGATE_FROM_2D))?;
            let shells = (0..=nmax).map(|s| csum((0..=s).map(|i| a[i] * b[s - i]))).collect();
            (shells, sur)
        }
        _ => return Err(Error::domain("divergence_demo", "supports d <= 2")),
    };
    let mut acc = CompensatedSum::new();
    let mut sums = Vec::with_capacity(nmax + 1);
    for (s, v) in shells.iter().enumerate() {
        acc.add(v * (s as f64 + 1.0).powf(-beta));
        sums.push(acc.value());
    }
    let n = dyadic_points(FIT_FROM, nmax);
    let partial_sums: Vec<f64> = n.iter().map(|&k| sums[k]).collect();
    let lx: Vec<f64> = n.iter().map(|&k| (k as f64).ln()).collect();
    let (slope, intercept, r_squared) =
        linear_fit(&lx, &partial_sums).ok_or_else(|| Error::domain("divergence_demo", "fit needs two points"))?;
    Ok(DivergenceReport {
        alpha: alpha.values().to_vec(),
        x: x.coords().to_vec(),
        beta,
        nmax,
        n,
        partial_sums,
        slope,
        intercept,
        r_squared,
        cauchy_tail: sums[nmax] - sums[nmax / 2],
        surrogate_from,
    })
}

fn phase(beta: f64) -> f64 {
    PI * (2.0 * beta + 1.0) / 4.0
}

/// `Σ_{k<=K} cos²(2√k u - π(2β+1)/4)/k`, the main part `H(K)/2`, and the
/// oscillatory remainder `½ Σ (cos 4√k u cos θ + sin 4√k u sin θ)/k` with
/// `θ = π(2β+1)/2`.
pub fn cos_squared_decomposition_check(u: f64, beta: f64, k: u64) -> Result<(f64, f64, f64)> {
    if k < 10 {
        return Err(Error::domain("cos_squared_decomposition_check", format!("K = {k} must be at least 10")));
    }
    if !(u > 0.0) {
        return Err(Error::domain("cos_squared_decomposition_check", format!("u = {u} must be positive")));
    }
    let ph = phase(beta);
    let (ct, st) = ((2.0 * ph).cos(), (2.0 * ph).sin());
    let mut sum = CompensatedSum::new();
    let mut rem = CompensatedSum::new();
    for j in 1..=k {
        let jf = j as f64;
        let s = jf.sqrt();
        sum.add((2.0 * s * u - ph).cos().powi(2) / jf);
        let a = 4.0 * s * u;
        rem.add(0.5 * (a.cos() * ct + a.sin() * st) / jf);
    }
    Ok((sum.value(), 0.5 * harmonic_number(k), rem.value()))
}

/// Largest termwise defect of `cos²θ_k = ½ + ½(cos 4√k u cos θ + sin 4√k u sin θ)` for `k <= kmax`.
pub fn cos_squared_termwise_defect(u: f64, beta: f64, kmax: u64) -> f64 {
    let ph = phase(beta);
    let (ct, st) = ((2.0 * ph).cos(), (2.0 * ph).sin());
    (1..=kmax)
        .map(|j| {
            let s = (j as f64).sqrt();
            let lhs = (2.0 * s * u - ph).cos().powi(2);
            let a = 4.0 * s * u;
            let rhs = 0.5 * (1.0 + a.cos() * ct + a.sin() * st);
            (lhs - rhs).abs()
        })
        .fold(0.0, f64::max)
}

/// Limit of the remainder, `½(cos θ L_cos(4u) + sin θ L_sin(4u))`, from the
/// accelerated series.
pub fn cos_squared_remainder_limit(u: f64, beta: f64, k: u64) -> Result<f64> {
    let ph = phase(beta);
    let (lc, _) = trig_series_limit(4.0 * u, TrigKind::Cos, k)?;
    let (ls, _) = trig_series_limit(4.0 * u, TrigKind::Sin, k)?;
    Ok(0.5 * ((2.0 * ph).cos() * lc + (2.0 * ph).sin() * ls))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn termwise_identity() {
        assert!(cos_squared_termwise_defect(1.0, 0.5, 10) < 1e-15);
    }

    #[test]
    fn decomposition_adds_up() {
        let (s, h, r) = cos_squared_decomposition_check(1.0, 0.5, 1000).unwrap();
        assert!((s - h - r).abs() < 1e-12);
        let lim = cos_squared_remainder_limit(1.0, 0.5, 20000).unwrap();
        let (_, _, r2) = cos_squared_decomposition_check(1.0, 0.5, 200_000).unwrap();
        assert!((r2 - lim).abs() < 1e-3);
    }

    #[test]
    fn large_beta_is_dominated_by_first_shells() {
        let a = AlphaIndex::scalar(0.5).unwrap();
        let x = EvalPoint::new(vec![1.0]).unwrap();
        let rep = divergence_demo(&a, &x, 10.0, 400).unwrap();
        let phi = hermite_laguerre_sweep(0.5, 1.0, 1).unwrap();
        let head = phi[0].abs() + phi[1].abs() / 1024.0;
        assert!((rep.partial_sums[0] - head).abs() < 1e-4);
    }

    #[test]
    fn two_dimensional_uses_surrogate() {
        let a = AlphaIndex::new(vec![0.5, 0.5]).unwrap();
        let x = EvalPoint::new(vec![1.0, 1.0]).unwrap();
        let rep = divergence_demo(&a, &x, 1.5, 1500).unwrap();
        assert_eq!(rep.surrogate_from, Some(SURROGATE_FROM_2D + 1));
        assert!(rep.partial_sums.windows(2).all(|w| w[1] >= w[0]));
    }
}
