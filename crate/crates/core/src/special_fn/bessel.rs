//! Exponentially scaled modified Bessel functions `e^{-z} I_α(z)` and the
//! ratio `I_{α-1}(z) / I_α(z)`.

use std::f64::consts::PI;

use super::gamma::log_gamma;
use super::laguerre::validate_alpha;
use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

/// Power series below this argument, large-argument expansion above.
pub const BESSEL_SERIES_CROSSOVER: f64 = 20.0;

/// Continued fraction below this argument for the ratio.
const RATIO_CF_LIMIT: f64 = 30.0;

const SERIES_MAX_TERMS: usize = 1_000_000;

fn validate_z(func: &'static str, z: f64) -> Result<()> {
    if z >= 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(func, format!("argument must be finite and >= 0, got {z}")))
    }
}

/// `ln(e^{-z} I_α(z))`. Returns `-inf` at `z = 0` for `α > 0`.
pub fn ln_bessel_i_scaled(alpha: f64, z: f64) -> Result<f64> {
    validate_alpha("bessel_i_scaled", alpha)?;
    validate_z("bessel_i_scaled", z)?;
    if z == 0.0 {
        return if alpha == 0.0 {
            Ok(0.0)
        } else if alpha > 0.0 {
            Ok(f64::NEG_INFINITY)
        } else {
            Err(Error::range("bessel_i_scaled", format!("I_{alpha}(0) is infinite")))
        };
    }
    if z <= BESSEL_SERIES_CROSSOVER {
        return ln_series(alpha, z);
    }
    match ln_asymptotic(alpha, z) {
        Some(v) => Ok(v),
        None => ln_series(alpha, z),
    }
}

/// `e^{-z} I_α(z)`.
pub fn bessel_i_scaled(alpha: f64, z: f64) -> Result<f64> {
    Ok(ln_bessel_i_scaled(alpha, z)?.exp())
}

/// Power series `Σ (z/2)^{2k+α} / (k! Γ(k+α+1))`, summed relative to its
/// largest term so that large `z` stays in range.
fn ln_series(alpha: f64, z: f64) -> Result<f64> {
    let q = 0.25 * z * z;
    let prefactor = alpha * (0.5 * z).ln() - log_gamma(alpha + 1.0)? - z;
    // Index of the largest term: k(k+α) ≈ q.
    let peak = {
        let k = 0.5 * (-alpha + (alpha * alpha + 4.0 * q).sqrt());
        k.max(0.0).floor() as usize
    };
    let ln_ratio = |k: usize| q.ln() - (k as f64).ln() - (k as f64 + alpha).ln();
    let mut ln_peak = 0.0;
    for k in 1..=peak {
        ln_peak += ln_ratio(k);
    }
    let mut acc = CompensatedSum::new();
    acc.add(1.0);
    let mut t = 1.0;
    let mut k = peak + 1;
    loop {
        t *= (ln_ratio(k)).exp();
        acc.add(t);
        if t < 1e-17 * acc.value() {
            break;
        }
        k += 1;
        if k > peak + SERIES_MAX_TERMS {
            return Err(Error::budget("bessel_i_scaled", format!("series did not converge at z = {z}")));
        }
    }
    t = 1.0;
    let mut k = peak;
    while k >= 1 {
        t /= ln_ratio(k).exp();
        acc.add(t);
        if t < 1e-17 * acc.value() {
            break;
        }
        k -= 1;
    }
    Ok(prefactor + ln_peak + acc.value().ln())
}

/// Hankel expansion `e^{-z} I_α(z) ~ (2πz)^{-1/2} Σ_k (-1)^k a_k(α) z^{-k}`.
/// `None` when the terms stop decreasing before reaching double precision.
fn ln_asymptotic(alpha: f64, z: f64) -> Option<f64> {
    let sum = asymptotic_sum(alpha, z)?;
    Some(-0.5 * (2.0 * PI * z).ln() + sum.ln())
}

fn asymptotic_sum(alpha: f64, z: f64) -> Option<f64> {
    let mu = 4.0 * alpha * alpha;
    let mut acc = CompensatedSum::new();
    acc.add(1.0);
    let mut t: f64 = 1.0;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        let next = t * (odd * odd - mu) / (8.0 * k as f64 * z);
        if next == 0.0 {
            return Some(acc.value());
        }
        if next.abs() > t.abs() && k as f64 > 0.5 * alpha.abs() + 1.0 {
            return None;
        }
        t = next;
        acc.add(t);
        if t.abs() < 1e-17 * acc.value().abs() {
            let s = acc.value();
            return (s > 0.0).then_some(s);
        }
    }
    None
}

/// `I_{α+1}(z) / I_α(z)` by the modified Lentz algorithm on
/// `1 / (2(α+1)/z + 1 / (2(α+2)/z + ...))`.
fn upper_ratio_cf(alpha: f64, z: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let mut f = TINY;
    let mut c = f;
    let mut d = 0.0;
    let max_iter = 100_000 + 10 * z as usize;
    for k in 1..=max_iter {
        let b = 2.0 * (alpha + k as f64) / z;
        d = b + d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + 1.0 / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            return Ok(f);
        }
    }
    Err(Error::budget("bessel_ratio", format!("continued fraction did not converge at z = {z}")))
}

/// `I_{α-1}(z) / I_α(z)` for `α >= 1/2`, `z > 0`.
///
/// Small and moderate `z` use the continued fraction for `I_{α+1}/I_α` and
/// the recurrence `I_{α-1}/I_α = 2α/z + I_{α+1}/I_α`, which involves no
/// subtraction. Large `z` takes the quotient of the two Hankel expansions,
/// both of which are positive and accurate to rounding there.
pub fn bessel_ratio(alpha: f64, z: f64) -> Result<f64> {
    if !(alpha >= 0.5) || !alpha.is_finite() {
        return Err(Error::range("bessel_ratio", format!("alpha = {alpha} < 1/2")));
    }
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::domain("bessel_ratio", format!("z must be in (0, inf), got {z}")));
    }
    if z > RATIO_CF_LIMIT {
        if let (Some(lo), Some(hi)) = (asymptotic_sum(alpha - 1.0, z), asymptotic_sum(alpha, z)) {
            return Ok(lo / hi);
        }
    }
    Ok(2.0 * alpha / z + upper_ratio_cf(alpha, z)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn half_closed(z: f64, sinh: bool) -> f64 {
        // e^{-z} (2/(πz))^{1/2} {sinh, cosh} z
        let e = (-2.0 * z).exp_m1();
        let h = if sinh { -0.5 * e } else { 0.5 * (2.0 + e) };
        (2.0 / (PI * z)).sqrt() * h
    }

    #[test]
    fn spot_values() {
        assert_relative_eq!(bessel_i_scaled(0.0, 0.0).unwrap(), 1.0);
        assert_relative_eq!(bessel_i_scaled(0.5, 1.0).unwrap(), 0.3450, epsilon = 5e-5);
        assert_relative_eq!(bessel_i_scaled(-0.5, 1.0).unwrap(), 0.4529, epsilon = 5e-5);
        assert_eq!(bessel_i_scaled(1.0, 0.0).unwrap(), 0.0);
        assert!(bessel_i_scaled(-0.5, 0.0).is_err());
        assert!(bessel_i_scaled(-1.0, 1.0).is_err());
        assert!(bessel_i_scaled(0.5, -1.0).is_err());
    }

    #[test]
    fn half_order_closed_forms() {
        let mut z = 1e-3;
        while z < 1e4 {
            assert_relative_eq!(bessel_i_scaled(0.5, z).unwrap(), half_closed(z, true), max_relative = 1e-12);
            assert_relative_eq!(bessel_i_scaled(-0.5, z).unwrap(), half_closed(z, false), max_relative = 1e-12);
            z *= 1.17;
        }
    }

    #[test]
    fn branches_agree_at_crossover() {
        for &alpha in &[0.0, 0.5, 1.0, 2.0, 2.5, 5.0, 10.0] {
            for &z in &[18.0, 20.0, 22.0, 30.0] {
                let s = ln_series(alpha, z).unwrap();
                if let Some(a) = ln_asymptotic(alpha, z) {
                    assert!((s - a).abs() < 1e-12, "alpha={alpha} z={z}: {s} vs {a}");
                }
            }
        }
    }

    #[test]
    fn recurrence_between_orders() {
        // I_{α-1} - I_{α+1} = (2α/z) I_α
        for &alpha in &[1.0, 1.5, 3.0] {
            for &z in &[0.1, 2.0, 15.0, 40.0, 300.0] {
                let lo = bessel_i_scaled(alpha - 1.0, z).unwrap();
                let mid = bessel_i_scaled(alpha, z).unwrap();
                let hi = bessel_i_scaled(alpha + 1.0, z).unwrap();
                assert_relative_eq!(lo - hi, 2.0 * alpha / z * mid, max_relative = 1e-11);
            }
        }
    }

    #[test]
    fn ratio_examples() {
        assert_relative_eq!(bessel_ratio(0.5, 1.0).unwrap(), 1.0f64.tanh().recip(), max_relative = 1e-14);
        assert_relative_eq!(bessel_ratio(0.5, 10.0).unwrap(), 10.0f64.tanh().recip(), max_relative = 1e-14);
        let v = bessel_ratio(3.0, 2.0).unwrap();
        let oracle = bessel_i_scaled(2.0, 2.0).unwrap() / bessel_i_scaled(3.0, 2.0).unwrap();
        assert_relative_eq!(v, oracle, max_relative = 1e-12);
        assert!((v - 1.0).abs() <= 3.0);
        assert!(bessel_ratio(0.25, 1.0).is_err());
        assert!(bessel_ratio(1.0, 0.0).is_err());
    }

    #[test]
    fn ratio_continuous_across_switch() {
        for &alpha in &[0.5, 1.0, 2.5, 3.0] {
            let z = RATIO_CF_LIMIT + 1e-9;
            let a = 2.0 * alpha / z + upper_ratio_cf(alpha, z).unwrap();
            let b = bessel_ratio(alpha, z).unwrap();
            assert_relative_eq!(a, b, max_relative = 1e-13);
        }
    }

    #[test]
    fn ratio_bound_on_grid() {
        for &alpha in &[0.5, 1.0, 3.0] {
            for i in 0..=400 {
                let z = 1e-3 * (5e4f64).powf(i as f64 / 400.0);
                let v = bessel_ratio(alpha, z).unwrap();
                assert!((v - 1.0).abs() <= 2.0 * alpha / z, "alpha={alpha} z={z} v={v}");
            }
        }
    }
}
