use serde::{Deserialize, Serialize};

use super::harmonic::{harmonic_remainder, EULER_GAMMA};
use super::oscillatory::{tail, zero_aligned, Wave};
use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;
use crate::sum::CompensatedSum;

pub const NAIVE_MAX_K: u64 = 100_000_000;
pub const ACCELERATED_MAX_K: u64 = 10_000_000;
const CORRECTION_NPTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrigKind {
    Sin,
    Cos,
}

impl TrigKind {
    fn wave(self) -> Wave {
        match self {
            TrigKind::Sin => Wave::Sin,
            TrigKind::Cos => Wave::Cos,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TrigKind::Sin => "sin",
            TrigKind::Cos => "cos",
        }
    }
}

impl std::str::FromStr for TrigKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sin" => Ok(TrigKind::Sin),
            "cos" => Ok(TrigKind::Cos),
            _ => Err(Error::Config(format!("trig kind must be sin or cos, got {s:?}"))),
        }
    }
}

fn check_t(func: &'static str, t: f64) -> Result<()> {
    if t == 0.0 || !t.is_finite() {
        return Err(Error::domain(func, format!("t = {t} must be finite and nonzero")));
    }
    Ok(())
}

/// `Σ_{k=1}^K trig(t √k) / k`.
pub fn trig_series_naive(t: f64, kind: TrigKind, k: u64) -> Result<f64> {
    check_t("trig_series_naive", t)?;
    if k == 0 || k > NAIVE_MAX_K {
        return Err(Error::budget("trig_series_naive", format!("K = {k} outside 1..={NAIVE_MAX_K}")));
    }
    let w = kind.wave();
    let mut acc = CompensatedSum::new();
    for j in 1..=k {
        let jf = j as f64;
        acc.add(w_eval(w, t * jf.sqrt()) / jf);
    }
    Ok(acc.value())
}

fn w_eval(w: Wave, v: f64) -> f64 {
    match w {
        Wave::Cos => v.cos(),
        Wave::Sin => v.sin(),
    }
}

/// `-b'(u)` for `b(u) = trig(t √u)`, `t > 0`.
fn minus_b_prime(kind: TrigKind, t: f64, u: f64) -> f64 {
    let s = u.sqrt();
    match kind {
        TrigKind::Cos => t * (t * s).sin() / (2.0 * s),
        TrigKind::Sin => -t * (t * s).cos() / (2.0 * s),
    }
}

/// `C(K) = -∫_1^K r(u) b'(u) du` with `r(u) = H(⌊u⌋) - ln u - γ`, one
/// Gauss panel per unit interval.
fn correction(kind: TrigKind, t: f64, k: u64) -> f64 {
    let rule = gauss_legendre(CORRECTION_NPTS, 0.0, 1.0).expect("valid rule");
    let mut acc = CompensatedSum::new();
    for j in 1..k {
        let jf = j as f64;
        let rj = harmonic_remainder(j);
        let mut panel = 0.0;
        for (&f, &w) in rule.nodes().iter().zip(rule.weights()) {
            let u = jf + f;
            let r = rj - (f / jf).ln_1p();
            panel += w * r * minus_b_prime(kind, t, u);
        }
        acc.add(panel);
    }
    acc.value()
}

/// Pieces of the summation-by-parts identity for `t > 0`:
/// `S(K) = r(K) b(K) + γ b(1) + 2∫_t^{t√K} trig(w)/w dw + C(K)`.
struct Identity {
    boundary: f64,
    start: f64,
    integral: f64,
    correction: f64,
}

fn identity(t: f64, kind: TrigKind, k: u64) -> Identity {
    let w = kind.wave();
    let b = |u: f64| w_eval(w, t * u.sqrt());
    let kf = k as f64;
    Identity {
        boundary: harmonic_remainder(k) * b(kf),
        start: EULER_GAMMA * b(1.0),
        integral: 2.0 * zero_aligned(&|v: f64| 1.0 / v, w, t, t * kf.sqrt()),
        correction: correction(kind, t, k),
    }
}

fn reduce(t: f64, kind: TrigKind) -> (f64, f64) {
    let sign = if kind == TrigKind::Sin && t < 0.0 { -1.0 } else { 1.0 };
    (t.abs(), sign)
}

/// The finite sum `Σ_{k<=K} trig(t√k)/k` evaluated through summation by
/// parts against `H(⌊u⌋) = ln u + γ + r(u)`:
/// `H(K) b(K) - ∫_1^K H(⌊u⌋) b'(u) du`, with the `ln u + γ` part integrated
/// by parts once more into `∫_1^K b(u)/u du = 2∫_t^{t√K} trig(v)/v dv`.
pub fn trig_series_accelerated(t: f64, kind: TrigKind, k: u64) -> Result<f64> {
    check_t("trig_series_accelerated", t)?;
    if k < 2 || k > ACCELERATED_MAX_K {
        return Err(Error::budget("trig_series_accelerated", format!("K = {k} outside 2..={ACCELERATED_MAX_K}")));
    }
    let (t, sign) = reduce(t, kind);
    let id = identity(t, kind, k);
    Ok(sign * (id.boundary + id.start + id.integral + id.correction))
}

/// Estimate of `Σ_{k>=1} trig(t√k)/k` from the first `K` unit panels, and
/// an error indicator.
///
/// Drops `r(K) b(K)`, extends the integral to infinity and adds the leading
/// Euler-Maclaurin term `-b'(K)/(12K)` of the remaining correction.
pub fn trig_series_limit(t: f64, kind: TrigKind, k: u64) -> Result<(f64, f64)> {
    check_t("trig_series_limit", t)?;
    if k < 2 || k > ACCELERATED_MAX_K {
        return Err(Error::budget("trig_series_limit", format!("K = {k} outside 2..={ACCELERATED_MAX_K}")));
    }
    let (t, sign) = reduce(t, kind);
    let id = identity(t, kind, k);
    let kf = k as f64;
    let (tl, tail_err) = tail(&|v: f64| 1.0 / v, kind.wave(), t * kf.sqrt());
    let c_tail = minus_b_prime(kind, t, kf) / (12.0 * kf);
    let value = id.start + id.integral + 2.0 * tl + id.correction + c_tail;
    // Next Euler-Maclaurin order is smaller than the leading term by 1/√K.
    let err = 2.0 * tail_err + c_tail.abs() * (1.0 + t) / kf.sqrt();
    Ok((sign * value, err))
}

/// Snapshot of the series at one truncation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrigSeriesState {
    pub t: f64,
    pub kind: TrigKind,
    pub k: u64,
    pub naive: f64,
    pub accelerated: f64,
    pub limit_estimate: f64,
    pub error_indicator: f64,
}

pub fn trig_series_state(t: f64, kind: TrigKind, k: u64) -> Result<TrigSeriesState> {
    let naive = trig_series_naive(t, kind, k)?;
    let accelerated = trig_series_accelerated(t, kind, k)?;
    let (limit_estimate, error_indicator) = trig_series_limit(t, kind, k)?;
    Ok(TrigSeriesState { t, kind, k, naive, accelerated, limit_estimate, error_indicator })
}
