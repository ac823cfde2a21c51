//! Four-regime pointwise envelopes for `φ_k^α`.

use serde::{Deserialize, Serialize};

use super::laguerre::hermite_sweep_unchecked;
use crate::error::{Error, Result};

/// Default tail decay rate in `u^{1/2} e^{-γu²}`.
///
/// The rate must be uniform in `k`. Just past the last turning point the
/// functions decay like `exp(-c (u² - ν)^{3/2} / √ν)`, which for large `ν`
/// is slower than `e^{-u²/4}` on most of the tail, so `γ = 1/4` combined
/// with a `k`-independent constant fails. `1/16` holds across the grids
/// scanned (`k <= 2000`) with a modest constant.
pub const DEFAULT_TAIL_GAMMA: f64 = 1.0 / 16.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Small,
    Flat,
    Turning,
    Tail,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Small => "small",
            Regime::Flat => "flat",
            Regime::Turning => "turning",
            Regime::Tail => "tail",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub regime: Regime,
    pub bound: f64,
    pub nu: f64,
    pub gamma: f64,
}

/// `ν(α, k) = max(4k + 2α + 2, 2)`.
pub fn nu(alpha: f64, k: usize) -> f64 {
    (4.0 * k as f64 + 2.0 * alpha + 2.0).max(2.0)
}

/// Envelope with the default tail rate.
pub fn envelope(alpha: f64, k: usize, u: f64, c: f64) -> Result<Envelope> {
    envelope_with_gamma(alpha, k, u, c, DEFAULT_TAIL_GAMMA)
}

pub fn envelope_with_gamma(alpha: f64, k: usize, u: f64, c: f64, gamma: f64) -> Result<Envelope> {
    if !(alpha >= -0.5) || !alpha.is_finite() {
        return Err(Error::range("envelope", format!("alpha = {alpha} < -1/2")));
    }
    if !(u > 0.0) || !u.is_finite() {
        return Err(Error::domain("envelope", format!("u must be in (0, inf), got {u}")));
    }
    if !(c > 0.0) || !(gamma > 0.0) {
        return Err(Error::domain("envelope", "constant and tail rate must be positive"));
    }
    let nu = nu(alpha, k);
    let (regime, raw) = if u <= 1.0 / nu.sqrt() {
        (Regime::Small, u.powf(alpha + 0.5) * nu.powf(0.5 * alpha))
    } else if u <= (0.5 * nu).sqrt() {
        (Regime::Flat, nu.powf(-0.25))
    } else if u <= (1.5 * nu).sqrt() {
        let gap = (u * u - nu).abs();
        (Regime::Turning, u.sqrt() * (nu * (nu.cbrt() + gap)).powf(-0.25))
    } else {
        (Regime::Tail, u.sqrt() * (-gamma * u * u).exp())
    };
    Ok(Envelope { regime, bound: c * raw, nu, gamma })
}

/// Smallest `C` such that the envelope dominates `|φ_k^α(u)|` for every
/// `k <= kmax` and every `u` in `grid`.
pub fn fit_envelope_constant(alpha: f64, kmax: usize, grid: &[f64], gamma: f64) -> Result<f64> {
    super::laguerre::validate_alpha("fit_envelope_constant", alpha)?;
    let mut best: f64 = 0.0;
    let mut phi = Vec::new();
    for &u in grid {
        if !(u > 0.0) {
            return Err(Error::domain("fit_envelope_constant", format!("grid point {u} <= 0")));
        }
        hermite_sweep_unchecked(alpha, u, kmax, &mut phi);
        for (k, v) in phi.iter().enumerate() {
            let env = envelope_with_gamma(alpha, k, u, 1.0, gamma)?;
            if env.bound > 0.0 {
                best = best.max(v.abs() / env.bound);
            }
        }
    }
    Ok(best)
}
