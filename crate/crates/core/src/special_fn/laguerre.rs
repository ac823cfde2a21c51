//! Laguerre polynomials, standard Laguerre functions and Laguerre functions
//! of Hermite type.
//!
//! The functions are produced by a forward recurrence on the orthonormalised
//! sequence itself rather than on the raw polynomials, so the Gamma-ratio
//! normalisation never has to be formed. The factor `u^{α/2} e^{-u/2}` is
//! carried separately in the log domain together with a power-of-two scale
//! counter; this keeps the recurrence in range for arguments where the weight
//! underflows long before the functions themselves become small.

use std::f64::consts::{PI, LN_2};

use super::gamma::log_gamma;
use super::index::{is_hermite_class, AlphaIndex, EvalPoint, MultiIndex};
use crate::error::{Error, Result};

/// Arguments below this are treated as the boundary `u = 0` by callers that
/// report limit values.
pub const BOUNDARY_EPS: f64 = 1e-8;

/// Step for central finite differences used in derivative checks.
pub const FD_STEP: f64 = 1e-5;

const RESCALE_EXP: i32 = 600;

pub(crate) fn validate_alpha(func: &'static str, alpha: f64) -> Result<()> {
    if alpha > -1.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::range(func, format!("alpha = {alpha} violates alpha > -1")))
    }
}

fn validate_arg(func: &'static str, u: f64) -> Result<()> {
    if u >= 0.0 && u.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(func, format!("argument must be finite and >= 0, got {u}")))
    }
}

/// Raw Laguerre polynomials `L_0^α(u), ..., L_kmax^α(u)`.
pub fn laguerre_poly_seq(alpha: f64, u: f64, kmax: usize) -> Result<Vec<f64>> {
    validate_alpha("laguerre_poly_seq", alpha)?;
    validate_arg("laguerre_poly_seq", u)?;
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(1.0);
    if kmax == 0 {
        return Ok(out);
    }
    out.push(1.0 + alpha - u);
    for k in 1..kmax {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - u) * out[k] - (kf + alpha) * out[k - 1]) / (kf + 1.0);
        if !next.is_finite() {
            return Err(Error::range(
                "laguerre_poly_seq",
                format!("L_{}^{alpha}({u}) overflows double precision", k + 1),
            ));
        }
        out.push(next);
    }
    Ok(out)
}

/// Log of the weight `u^{α/2} e^{-u/2} / sqrt(Γ(α+1))`, or `None` when the
/// function vanishes identically (the `u = 0`, `α > 0` limit).
fn ln_weight(alpha: f64, u: f64) -> Result<Option<f64>> {
    let lg = log_gamma(alpha + 1.0)?;
    if u == 0.0 {
        if alpha == 0.0 {
            return Ok(Some(-0.5 * lg));
        }
        if alpha > 0.0 {
            return Ok(None);
        }
        return Err(Error::domain(
            "standard_laguerre_fn",
            format!("u^(alpha/2) is unbounded at u = 0 for alpha = {alpha} < 0"),
        ));
    }
    Ok(Some(0.5 * alpha * u.ln() - 0.5 * u - 0.5 * lg))
}

/// Combine a scaled recurrence value with its log weight.
#[inline]
fn unscale(value: f64, ln_factor: f64) -> f64 {
    if value == 0.0 {
        return 0.0;
    }
    if ln_factor.abs() < 700.0 {
        value * ln_factor.exp()
    } else {
        value.signum() * (value.abs().ln() + ln_factor).exp()
    }
}

/// Normalised recurrence driver. Calls `emit(k, value)` for `k = 0..=kmax`.
fn sweep_with<F: FnMut(usize, f64)>(alpha: f64, u: f64, kmax: usize, mut emit: F) -> Result<()> {
    let Some(ln_w) = ln_weight(alpha, u)? else {
        for k in 0..=kmax {
            emit(k, 0.0);
        }
        return Ok(());
    };
    let rescale = 2f64.powi(-RESCALE_EXP);
    let rescale_ln = RESCALE_EXP as f64 * LN_2;
    let mut ln_scale = 0.0;

    let mut prev = 1.0;
    emit(0, unscale(prev, ln_w));
    if kmax == 0 {
        return Ok(());
    }
    let mut cur = (1.0 + alpha - u) / (1.0 + alpha).sqrt();
    emit(1, unscale(cur, ln_w));
    for k in 1..kmax {
        let kf = k as f64;
        let denom = ((kf + 1.0) * (kf + 1.0 + alpha)).sqrt();
        let a = (2.0 * kf + 1.0 + alpha - u) / denom;
        let b = (kf * (kf + alpha)).sqrt() / denom;
        let mut next = a * cur - b * prev;
        prev = cur;
        if next.abs() > 1.0 / rescale {
            next *= rescale;
            prev *= rescale;
            ln_scale += rescale_ln;
        }
        cur = next;
        emit(k + 1, unscale(cur, ln_w + ln_scale));
    }
    Ok(())
}

/// Standard Laguerre functions `ℒ_0^α(u), ..., ℒ_kmax^α(u)`.
///
/// `u = 0` is accepted and returns the boundary limit where it is finite.
pub fn standard_laguerre_sweep(alpha: f64, u: f64, kmax: usize) -> Result<Vec<f64>> {
    validate_alpha("standard_laguerre_fn", alpha)?;
    validate_arg("standard_laguerre_fn", u)?;
    let mut out = Vec::with_capacity(kmax + 1);
    sweep_with(alpha, u, kmax, |_, v| out.push(v))?;
    Ok(out)
}

/// `ℒ_k^α(u)`.
pub fn standard_laguerre_fn(alpha: f64, k: usize, u: f64) -> Result<f64> {
    validate_alpha("standard_laguerre_fn", alpha)?;
    validate_arg("standard_laguerre_fn", u)?;
    let mut last = 0.0;
    sweep_with(alpha, u, k, |_, v| last = v)?;
    Ok(last)
}

/// `φ_k^α(0)`: finite and nonzero only at `α = -1/2`, zero for `α > -1/2`.
pub fn hermite_laguerre_at_zero(alpha: f64, k: usize) -> Result<f64> {
    validate_alpha("hermite_laguerre_fn", alpha)?;
    if alpha == -0.5 {
        let kf = k as f64;
        let ln = 0.5 * (LN_2 + log_gamma(kf + 0.5)? - PI.ln() - log_gamma(kf + 1.0)?);
        Ok(ln.exp())
    } else if alpha > -0.5 {
        Ok(0.0)
    } else {
        Err(Error::domain(
            "hermite_laguerre_fn",
            format!("phi_k^alpha is unbounded at u = 0 for alpha = {alpha} < -1/2"),
        ))
    }
}

/// Sweep without parameter validation, for hot loops whose inputs were
/// validated once by the caller. `u > 0` is required.
pub(crate) fn hermite_sweep_unchecked(alpha: f64, u: f64, kmax: usize, out: &mut Vec<f64>) {
    out.clear();
    let s = (2.0 * u).sqrt();
    let res = sweep_with(alpha, u * u, kmax, |_, v| out.push(s * v));
    debug_assert!(res.is_ok());
    if res.is_err() {
        out.resize(kmax + 1, f64::NAN);
    }
}

/// Laguerre functions of Hermite type `φ_0^α(u), ..., φ_kmax^α(u)`, via
/// `φ_k^α(u) = (2u)^{1/2} ℒ_k^α(u²)`.
pub fn hermite_laguerre_sweep(alpha: f64, u: f64, kmax: usize) -> Result<Vec<f64>> {
    validate_alpha("hermite_laguerre_fn", alpha)?;
    validate_arg("hermite_laguerre_fn", u)?;
    if u == 0.0 {
        return (0..=kmax).map(|k| hermite_laguerre_at_zero(alpha, k)).collect();
    }
    let s = (2.0 * u).sqrt();
    let mut out = standard_laguerre_sweep(alpha, u * u, kmax)?;
    out.iter_mut().for_each(|v| *v *= s);
    Ok(out)
}

/// `φ_k^α(u)`.
pub fn hermite_laguerre_fn(alpha: f64, k: usize, u: f64) -> Result<f64> {
    validate_alpha("hermite_laguerre_fn", alpha)?;
    validate_arg("hermite_laguerre_fn", u)?;
    if u == 0.0 {
        return hermite_laguerre_at_zero(alpha, k);
    }
    Ok((2.0 * u).sqrt() * standard_laguerre_fn(alpha, k, u * u)?)
}

/// `φ_n^α(x) = Π_i φ_{n_i}^{α_i}(x_i)`.
pub fn hermite_laguerre_fn_multi(alpha: &AlphaIndex, n: &MultiIndex, x: &EvalPoint) -> Result<f64> {
    let d = alpha.dim();
    for got in [n.dim(), x.dim()] {
        if got != d {
            return Err(Error::DimensionMismatch { expected: d, got });
        }
    }
    let mut prod = 1.0;
    for i in 0..d {
        prod *= hermite_laguerre_fn(alpha.get(i), n.entries()[i], x.coords()[i])?;
        if prod == 0.0 {
            break;
        }
    }
    Ok(prod)
}

fn check_derivative_alpha(alpha: f64) -> Result<()> {
    validate_alpha("hermite_laguerre_dx", alpha)?;
    if is_hermite_class(alpha) {
        Ok(())
    } else {
        Err(Error::range(
            "hermite_laguerre_dx",
            format!("alpha = {alpha} is outside {{-1/2}} ∪ [1/2, inf)"),
        ))
    }
}

/// `(φ_k^α)'(u) = -2√k φ_{k-1}^{α+1}(u) + ((2α+1)/(2u) - u) φ_k^α(u)`.
pub fn hermite_laguerre_dx(alpha: f64, k: usize, u: f64) -> Result<f64> {
    check_derivative_alpha(alpha)?;
    if !(u > 0.0) || !u.is_finite() {
        return Err(Error::domain("hermite_laguerre_dx", format!("u must be in (0, inf), got {u}")));
    }
    let phi = hermite_laguerre_fn(alpha, k, u)?;
    let lowered = if k == 0 { 0.0 } else { hermite_laguerre_fn(alpha + 1.0, k - 1, u)? };
    Ok(-2.0 * (k as f64).sqrt() * lowered + ((2.0 * alpha + 1.0) / (2.0 * u) - u) * phi)
}

/// Derivatives `(φ_k^α)'(u)` for `k = 0..=kmax`.
pub fn hermite_laguerre_dx_sweep(alpha: f64, u: f64, kmax: usize) -> Result<Vec<f64>> {
    check_derivative_alpha(alpha)?;
    if !(u > 0.0) || !u.is_finite() {
        return Err(Error::domain("hermite_laguerre_dx", format!("u must be in (0, inf), got {u}")));
    }
    let phi = hermite_laguerre_sweep(alpha, u, kmax)?;
    let raised = if kmax > 0 { hermite_laguerre_sweep(alpha + 1.0, u, kmax - 1)? } else { Vec::new() };
    let c = (2.0 * alpha + 1.0) / (2.0 * u) - u;
    Ok((0..=kmax)
        .map(|k| {
            let lowered = if k == 0 { 0.0 } else { raised[k - 1] };
            -2.0 * (k as f64).sqrt() * lowered + c * phi[k]
        })
        .collect())
}

/// Oscillatory large-`k` main term `π^{-1/2} k^{-1/4} cos(2√k u - π(2β+1)/4)`.
pub fn asymptotic_phi(beta: f64, k: usize, u: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::domain("asymptotic_phi", "k must be >= 1"));
    }
    if !(beta >= -0.5) {
        return Err(Error::domain("asymptotic_phi", format!("beta = {beta} < -1/2")));
    }
    let kf = k as f64;
    let phase = 2.0 * kf.sqrt() * u - PI * (2.0 * beta + 1.0) / 4.0;
    Ok(kf.powf(-0.25) * phase.cos() / PI.sqrt())
}
