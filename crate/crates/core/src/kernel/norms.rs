use serde::Serialize;

use super::closed::{kernel_closed, kernel_dx, SmoothingParam};
use crate::error::{Error, Result};
use crate::exec;
use crate::quadrature::CompositeRule;
use crate::special_fn::{is_hermite_class, nu};

const NPTS: usize = 16;

/// Integration window `[max(0, x - 12w - 3), x + 12w + 3]` with finer panels
/// on the Gaussian band `|y - x| <= 12w`.
fn window_rule(r: &SmoothingParam, x: f64) -> CompositeRule {
    let w = r.width();
    let band = 12.0 * w;
    let lo = (x - band - 3.0).max(0.0);
    let hi = x + band + 3.0;
    let inner_lo = (x - band).max(0.0);
    let inner_hi = x + band;
    let mut rule = CompositeRule::new(&[inner_lo, inner_hi], (0.5 * w).min(0.25), NPTS);
    for part in [[lo, inner_lo], [inner_hi, hi]] {
        if part[1] > part[0] {
            let extra = CompositeRule::new(&part, 0.25, NPTS);
            rule.nodes.extend(extra.nodes);
            rule.weights.extend(extra.weights);
        }
    }
    rule
}

fn l2_norm_with<F: Fn(f64) -> Result<f64>>(r: &SmoothingParam, x: f64, f: F) -> Result<f64> {
    let rule = window_rule(r, x);
    let mut vals = Vec::with_capacity(rule.nodes.len());
    for &y in &rule.nodes {
        vals.push(f(y)?);
    }
    if vals.iter().any(|v| !v.is_finite()) {
        return Err(Error::budget("l2_norm_kernel", format!("non-finite integrand at x = {x}")));
    }
    let s = crate::sum::csum(vals.iter().zip(&rule.weights).map(|(v, w)| w * v * v));
    Ok(s.sqrt())
}

/// `‖R_r^α(x, ·)‖_{L²(ℝ₊)}`.
pub fn l2_norm_kernel(alpha: f64, r: &SmoothingParam, x: f64) -> Result<f64> {
    if !(alpha >= -0.5) {
        return Err(Error::range("l2_norm_kernel", format!("alpha = {alpha} < -1/2")));
    }
    if !(x > 0.0) {
        return Err(Error::domain("l2_norm_kernel", format!("x = {x} must be positive")));
    }
    l2_norm_with(r, x, |y| kernel_closed(alpha, r, x, y))
}

/// `‖∂_x R_r^α(x, ·)‖_{L²(ℝ₊)}`.
pub fn l2_norm_kernel_dx(alpha: f64, r: &SmoothingParam, x: f64) -> Result<f64> {
    if !is_hermite_class(alpha) {
        return Err(Error::range("l2_norm_kernel_dx", format!("alpha = {alpha} is outside {{-1/2}} ∪ [1/2, inf)")));
    }
    if !(x > 0.0) {
        return Err(Error::domain("l2_norm_kernel_dx", format!("x = {x} must be positive")));
    }
    l2_norm_with(r, x, |y| kernel_dx(alpha, r, x, y))
}

/// Log-spaced `x` grid on `[1e-3, 20]` (200 points) plus `√ν(α, 0)`.
pub fn sup_grid(alpha: f64) -> Vec<f64> {
    let mut g: Vec<f64> = (0..200).map(|i| 1e-3 * (2e4f64).powf(i as f64 / 199.0)).collect();
    g.push(nu(alpha, 0).sqrt());
    g.sort_by(|a, b| a.partial_cmp(b).unwrap());
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    /// `sup_x ‖R_r(x, ·)‖₂`
    Kernel,
    /// `sup_x ‖∂_x R_r(x, ·)‖₂`
    Derivative,
    /// `sup_x ‖∂_{x_1} R_r(x, ·)‖_{L²(ℝ₊²)}` for the product kernel.
    ProductDerivative,
}

impl NormKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NormKind::Kernel => "kernel",
            NormKind::Derivative => "derivative",
            NormKind::ProductDerivative => "product_derivative",
        }
    }
}

/// A supremum over the `x` grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupNorm {
    pub value: f64,
    pub argmax: f64,
}

fn sup_over_grid<F: Fn(f64) -> Result<f64> + Sync + Send>(grid: &[f64], f: F) -> Result<SupNorm> {
    let vals = exec::try_map(grid, |&x| f(x))?;
    let (i, v) = vals
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, v)| if v > best.1 { (i, v) } else { best });
    Ok(SupNorm { value: v, argmax: grid[i] })
}

pub fn sup_l2_norm_kernel(alpha: f64, r: &SmoothingParam) -> Result<SupNorm> {
    sup_over_grid(&sup_grid(alpha), |x| l2_norm_kernel(alpha, r, x))
}

pub fn sup_l2_norm_kernel_dx(alpha: f64, r: &SmoothingParam) -> Result<SupNorm> {
    sup_over_grid(&sup_grid(alpha), |x| l2_norm_kernel_dx(alpha, r, x))
}

/// Bounded-ratio scan of `sup_x ‖·‖₂ · (1 - r)^p` over a grid of `r`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormScanReport {
    pub kind: NormKind,
    pub alpha: Vec<f64>,
    pub p: f64,
    pub r_values: Vec<f64>,
    pub sup_norms: Vec<f64>,
    pub argmax_x: Vec<Vec<f64>>,
    pub rescaled: Vec<f64>,
    /// `max(rescaled) / min(rescaled)`.
    pub ratio: f64,
}

/// Claimed exponent for each scan kind in dimension `d`.
pub fn claimed_exponent(kind: NormKind, d: usize) -> f64 {
    match kind {
        NormKind::Kernel => 0.25 * d as f64,
        NormKind::Derivative => 0.75,
        NormKind::ProductDerivative => (d as f64 + 2.0) / 4.0,
    }
}

/// `alpha` has one entry for `Kernel`/`Derivative`, two for
/// `ProductDerivative` (the first axis is differentiated). The product norm
/// factorises, so its supremum over a tensor grid is the product of the 1-D
/// suprema.
pub fn norm_scan(kind: NormKind, alpha: &[f64], r_values: &[f64], p: f64) -> Result<NormScanReport> {
    let expected = if kind == NormKind::ProductDerivative { 2 } else { 1 };
    if alpha.len() != expected {
        return Err(Error::DimensionMismatch { expected, got: alpha.len() });
    }
    if r_values.is_empty() {
        return Err(Error::Config("norm scan needs at least one r value".into()));
    }
    let mut sup_norms = Vec::new();
    let mut argmax_x = Vec::new();
    let mut rescaled = Vec::new();
    for &rv in r_values {
        let r = SmoothingParam::new(rv)?;
        let (v, at) = match kind {
            NormKind::Kernel => {
                let s = sup_l2_norm_kernel(alpha[0], &r)?;
                (s.value, vec![s.argmax])
            }
            NormKind::Derivative => {
                let s = sup_l2_norm_kernel_dx(alpha[0], &r)?;
                (s.value, vec![s.argmax])
            }
            NormKind::ProductDerivative => {
                let a = sup_l2_norm_kernel_dx(alpha[0], &r)?;
                let b = sup_l2_norm_kernel(alpha[1], &r)?;
                (a.value * b.value, vec![a.argmax, b.argmax])
            }
        };
        sup_norms.push(v);
        argmax_x.push(at);
        rescaled.push(v * r.one_minus().powf(p));
    }
    let max = rescaled.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = rescaled.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(NormScanReport {
        kind,
        alpha: alpha.to_vec(),
        p,
        r_values: r_values.to_vec(),
        sup_norms,
        argmax_x,
        rescaled,
        ratio: max / min,
    })
}
