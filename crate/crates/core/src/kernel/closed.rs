use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special_fn::{
    bessel_ratio, hermite_laguerre_sweep, is_hermite_class, ln_bessel_i_scaled, log_gamma, validate_alpha,
    AlphaIndex, EvalPoint,
};
use crate::sum::CompensatedSum;

/// Below this Bessel argument the kernel is evaluated from the power series
/// with the `r^{α/2}` factor cancelled analytically.
pub const SMALL_ARGUMENT_Z: f64 = 1e-2;

/// Upper bound for `sup_{k,u} |φ_k^α(u)|` over the orders used here
/// (`-1/2 <= α <= 10`); checked by grid maximisation in the tests.
pub const PHI_SUP_BOUND: f64 = 1.1;

/// Largest `r` accepted by the spectral series.
pub const SERIES_MAX_R: f64 = 0.99;

const SERIES_MAX_TERMS: usize = 200_000;

/// `r ∈ (0, 1)` with `1 - r` held separately so that values very close to 1
/// keep full relative precision in `1 - r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmoothingParam {
    r: f64,
    one_minus: f64,
    sqrt_r: f64,
    /// `(1 + r) / (1 - r)`
    ratio: f64,
    /// `2√r / (1 - r)`
    coupling: f64,
}

impl SmoothingParam {
    pub fn new(r: f64) -> Result<Self> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::domain("SmoothingParam::new", format!("r = {r} outside (0, 1)")));
        }
        Ok(Self::build(r, 1.0 - r))
    }

    /// Construct from `δ = 1 - r`.
    pub fn from_one_minus(delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::domain("SmoothingParam::from_one_minus", format!("1 - r = {delta} outside (0, 1)")));
        }
        Ok(Self::build(1.0 - delta, delta))
    }

    fn build(r: f64, one_minus: f64) -> Self {
        let sqrt_r = r.sqrt();
        Self { r, one_minus, sqrt_r, ratio: (1.0 + r) / one_minus, coupling: 2.0 * sqrt_r / one_minus }
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn one_minus(&self) -> f64 {
        self.one_minus
    }

    pub fn sqrt_r(&self) -> f64 {
        self.sqrt_r
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    /// `r²`, with `1 - r² = (1 - r)(1 + r)` kept exact.
    pub fn squared(&self) -> Self {
        Self::build(self.r * self.r, self.one_minus * (1.0 + self.r))
    }

    /// Gaussian width `((1 - r)/(1 + r))^{1/2}` of `x ↦ R_r(x, y)` near the
    /// diagonal.
    pub fn width(&self) -> f64 {
        (self.one_minus / (1.0 + self.r)).sqrt()
    }

    /// Bessel argument `z = 2√r xy / (1 - r)`.
    pub fn z(&self, x: f64, y: f64) -> f64 {
        self.coupling * x * y
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    ClosedBessel,
    SpectralSeries,
    SmallArgumentSeries,
}

/// A kernel evaluation request.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelQuery {
    pub alpha: AlphaIndex,
    pub r: SmoothingParam,
    pub x: f64,
    pub y: f64,
    pub branch: Branch,
}

impl KernelQuery {
    /// Picks `SmallArgumentSeries` when `z < 1e-2`, `ClosedBessel` otherwise.
    pub fn new(alpha: f64, r: SmoothingParam, x: f64, y: f64) -> Result<Self> {
        let alpha = AlphaIndex::scalar(alpha)?;
        check_xy("KernelQuery::new", x, y)?;
        let branch = if r.z(x, y) < SMALL_ARGUMENT_Z { Branch::SmallArgumentSeries } else { Branch::ClosedBessel };
        Ok(Self { alpha, r, x, y, branch })
    }

    pub fn with_branch(mut self, branch: Branch) -> Self {
        self.branch = branch;
        self
    }

    pub fn evaluate(&self) -> Result<f64> {
        let a = self.alpha.get(0);
        match self.branch {
            Branch::ClosedBessel => Ok(ln_kernel_bessel(a, &self.r, self.x, self.y)?.exp()),
            Branch::SmallArgumentSeries => Ok(ln_kernel_small(a, &self.r, self.x, self.y)?.exp()),
            Branch::SpectralSeries => kernel_series(a, &self.r, self.x, self.y, 1e-14),
        }
    }
}

fn check_xy(func: &'static str, x: f64, y: f64) -> Result<()> {
    if x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(func, format!("x, y must be positive, got ({x}, {y})")))
    }
}

/// Gaussian part of the exponent after cancelling `e^{z}`:
/// `-(1+r)(x-y)²/(2(1-r)) - (1-r) xy / (1+√r)²`.
#[inline]
fn exponent(r: &SmoothingParam, x: f64, y: f64) -> f64 {
    let d = x - y;
    let s = 1.0 + r.sqrt_r;
    -0.5 * r.ratio * d * d - r.one_minus * x * y / (s * s)
}

fn ln_kernel_bessel(alpha: f64, r: &SmoothingParam, x: f64, y: f64) -> Result<f64> {
    let z = r.z(x, y);
    Ok(LN_2 + 0.5 * (x * y).ln() - r.one_minus.ln() - 0.5 * alpha * r.r.ln()
        + exponent(r, x, y)
        + ln_bessel_i_scaled(alpha, z)?)
}

/// Power-series form, `r^{-α/2} (z/2)^α = (xy/(1-r))^α`.
fn ln_kernel_small(alpha: f64, r: &SmoothingParam, x: f64, y: f64) -> Result<f64> {
    let z = r.z(x, y);
    let q = 0.25 * z * z;
    let mut acc = CompensatedSum::new();
    let mut t = 1.0;
    acc.add(t);
    for k in 1..200 {
        t *= q / (k as f64 * (k as f64 + alpha));
        acc.add(t);
        if t < 1e-17 * acc.value() {
            break;
        }
    }
    let xy = x * y;
    Ok(LN_2 + (alpha + 0.5) * xy.ln() - (alpha + 1.0) * r.one_minus.ln() - log_gamma(alpha + 1.0)?
        - 0.5 * r.ratio * (x * x + y * y)
        + acc.value().ln())
}

/// `ln R_r^α(x, y)`.
pub fn ln_kernel_closed(alpha: f64, r: &SmoothingParam, x: f64, y: f64) -> Result<f64> {
    validate_alpha("kernel_closed", alpha)?;
    check_xy("kernel_closed", x, y)?;
    if r.z(x, y) < SMALL_ARGUMENT_Z {
        ln_kernel_small(alpha, r, x, y)
    } else {
        ln_kernel_bessel(alpha, r, x, y)
    }
}

/// `R_r^α(x, y)` from the Bessel closed form. Underflows to 0 once
/// `ln R < ln(f64::MIN_POSITIVE)`.
pub fn kernel_closed(alpha: f64, r: &SmoothingParam, x: f64, y: f64) -> Result<f64> {
    Ok(ln_kernel_closed(alpha, r, x, y)?.exp())
}

/// Number of terms the spectral series needs for absolute tolerance `tol`.
pub fn series_terms(r: &SmoothingParam, tol: f64) -> usize {
    let c2 = PHI_SUP_BOUND * PHI_SUP_BOUND;
    let n = ((tol * r.one_minus / c2).ln() / r.r.ln()).ceil();
    n.max(1.0) as usize
}

/// `Σ_{k<=N} r^k φ_k(x) φ_k(y)`, `N` chosen so the geometric tail is below `tol`.
pub fn kernel_series(alpha: f64, r: &SmoothingParam, x: f64, y: f64, tol: f64) -> Result<f64> {
    if !(alpha >= -0.5) {
        return Err(Error::range("kernel_series", format!("alpha = {alpha} < -1/2")));
    }
    if r.r > SERIES_MAX_R {
        return Err(Error::domain("kernel_series", format!("r = {} > {SERIES_MAX_R}", r.r)));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("kernel_series", "tol must be positive"));
    }
    check_xy("kernel_series", x, y)?;
    let n = series_terms(r, tol);
    if n > SERIES_MAX_TERMS {
        return Err(Error::budget("kernel_series", format!("{n} terms exceed cap {SERIES_MAX_TERMS}")));
    }
    let px = hermite_laguerre_sweep(alpha, x, n)?;
    let py = hermite_laguerre_sweep(alpha, y, n)?;
    let mut acc = CompensatedSum::new();
    let mut rk = 1.0;
    for k in 0..=n {
        acc.add(rk * px[k] * py[k]);
        rk *= r.r;
    }
    Ok(acc.value())
}

fn check_dx_alpha(alpha: f64) -> Result<()> {
    validate_alpha("kernel_dx", alpha)?;
    if is_hermite_class(alpha) {
        Ok(())
    } else {
        Err(Error::range("kernel_dx", format!("alpha = {alpha} is outside {{-1/2}} ∪ [1/2, inf)")))
    }
}

/// `∂_x R_r^α(x, y)`.
///
/// For `α >= 1/2`: `R · [(2√r y/(1-r)) I_{α-1}(z)/I_α(z) - (2α-1)/(2x) - (1+r)x/(1-r)]`.
/// For `α = -1/2` the explicit cosh/sinh form, with both hyperbolic factors
/// rescaled by `e^{-z}`.
pub fn kernel_dx(alpha: f64, r: &SmoothingParam, x: f64, y: f64) -> Result<f64> {
    check_dx_alpha(alpha)?;
    check_xy("kernel_dx", x, y)?;
    Ok(kernel_dx_unchecked(alpha, r, x, y))
}

pub(crate) fn kernel_dx_unchecked(alpha: f64, r: &SmoothingParam, x: f64, y: f64) -> f64 {
    let z = r.z(x, y);
    if alpha == -0.5 {
        let e2 = (-2.0 * z).exp();
        let sinh = -(-2.0 * z).exp_m1();
        let bracket = 2.0 * r.sqrt_r * y * sinh - (1.0 + r.r) * x * (1.0 + e2);
        let ln_pref = (2.0 / PI.sqrt()).ln() - 1.5 * r.one_minus.ln() - LN_2 + exponent(r, x, y);
        return bracket * ln_pref.exp();
    }
    let k = match ln_kernel_closed(alpha, r, x, y) {
        Ok(v) => v.exp(),
        Err(_) => return f64::NAN,
    };
    if k == 0.0 {
        return 0.0;
    }
    let rho = bessel_ratio(alpha, z).unwrap_or(f64::NAN);
    let bracket = r.coupling * y * rho - (2.0 * alpha - 1.0) / (2.0 * x) - r.ratio * x;
    k * bracket
}

/// `R_r^α(x, y) = Π_i R_r^{α_i}(x_i, y_i)`.
pub fn kernel_multi(alpha: &AlphaIndex, r: &SmoothingParam, x: &EvalPoint, y: &EvalPoint) -> Result<f64> {
    check_dims(alpha, x, y)?;
    let mut ln = 0.0;
    for i in 0..alpha.dim() {
        ln += ln_kernel_closed(alpha.get(i), r, x.coords()[i], y.coords()[i])?;
    }
    Ok(ln.exp())
}

/// `∂_{x_j} R_r^α(x, y)` with `j` a zero-based axis.
pub fn kernel_dxj_multi(
    alpha: &AlphaIndex,
    j: usize,
    r: &SmoothingParam,
    x: &EvalPoint,
    y: &EvalPoint,
) -> Result<f64> {
    check_dims(alpha, x, y)?;
    if j >= alpha.dim() {
        return Err(Error::domain("kernel_dxj_multi", format!("axis {j} out of range for d = {}", alpha.dim())));
    }
    let mut prod = kernel_dx(alpha.get(j), r, x.coords()[j], y.coords()[j])?;
    for i in (0..alpha.dim()).filter(|&i| i != j) {
        prod *= kernel_closed(alpha.get(i), r, x.coords()[i], y.coords()[i])?;
    }
    Ok(prod)
}

fn check_dims(alpha: &AlphaIndex, x: &EvalPoint, y: &EvalPoint) -> Result<()> {
    for got in [x.dim(), y.dim()] {
        if got != alpha.dim() {
            return Err(Error::DimensionMismatch { expected: alpha.dim(), got });
        }
    }
    Ok(())
}
