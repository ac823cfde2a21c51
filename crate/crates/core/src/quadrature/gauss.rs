use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

const MAX_POINTS: usize = 10_000;

/// Nodes and weights on `[-1, 1]`.
#[derive(Debug)]
pub(crate) struct StdRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

fn compute_std(n: usize) -> StdRule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 1 { x } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        if n == 1 {
            x = 0.0;
            dp = 1.0;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    StdRule { nodes, weights }
}

pub(crate) fn std_rule(n: usize) -> Arc<StdRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<StdRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().unwrap().get(&n) {
        return Arc::clone(r);
    }
    let rule = Arc::new(compute_std(n));
    cache.lock().unwrap().entry(n).or_insert(rule).clone()
}

/// A Gauss-Legendre rule mapped to `(a, b)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    a: f64,
    b: f64,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).collect::<CompensatedSum>().value()
    }
}

/// `npts`-point Gauss-Legendre rule on `(a, b)`, exact for polynomials of
/// degree `2 npts - 1`.
pub fn gauss_legendre(npts: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if npts == 0 || npts > MAX_POINTS {
        return Err(Error::domain("gauss_legendre", format!("npts = {npts} outside 1..={MAX_POINTS}")));
    }
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain("gauss_legendre", format!("need finite a < b, got ({a}, {b})")));
    }
    let std = std_rule(npts);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    Ok(QuadratureRule {
        nodes: std.nodes.iter().map(|t| mid + half * t).collect(),
        weights: std.weights.iter().map(|w| half * w).collect(),
        a,
        b,
    })
}

/// Composite Gauss-Legendre grid over consecutive panels.
#[derive(Debug, Clone, Default)]
pub struct CompositeRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// `panel_start[j]..panel_start[j+1]` indexes the nodes of panel `j`.
    pub panel_start: Vec<usize>,
}

impl CompositeRule {
    /// Panels between consecutive `breaks`, each further split into equal
    /// pieces no wider than `max_width`.
    pub fn new(breaks: &[f64], max_width: f64, npts: usize) -> Self {
        let std = std_rule(npts);
        let mut out = CompositeRule::default();
        for w in breaks.windows(2) {
            let (a, b) = (w[0], w[1]);
            if !(b > a) {
                continue;
            }
            let pieces = ((b - a) / max_width).ceil().max(1.0) as usize;
            let h = (b - a) / pieces as f64;
            for p in 0..pieces {
                let lo = a + p as f64 * h;
                let hi = if p + 1 == pieces { b } else { lo + h };
                out.push_panel(&std, lo, hi);
            }
        }
        out.panel_start.push(out.nodes.len());
        out
    }

    fn push_panel(&mut self, std: &StdRule, a: f64, b: f64) {
        self.panel_start.push(self.nodes.len());
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for (t, w) in std.nodes.iter().zip(&std.weights) {
            self.nodes.push(mid + half * t);
            self.weights.push(half * w);
        }
    }

    pub fn panels(&self) -> usize {
        self.panel_start.len().saturating_sub(1)
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).collect::<CompensatedSum>().value()
    }
}

/// `∫_0^∞ f` for integrands bounded by `M e^{-u²/(2σ²)}` beyond the bulk.
///
/// The domain is cut at `U = σ (2 ln(1/tol) + 8)^{1/2} + 3σ`, past which
/// the Gaussian tail is below `tol` relative to `M σ`. Panels are doubled
/// from 8 until two successive estimates agree to `tol`.
pub fn integrate_halfline<F: Fn(f64) -> f64>(f: F, sigma: f64, tol: f64) -> Result<f64> {
    if !(sigma > 0.0) || !(tol > 0.0) {
        return Err(Error::domain("integrate_halfline", "sigma and tol must be positive"));
    }
    let upper = sigma * ((2.0 * (1.0 / tol).ln()).max(0.0) + 8.0).sqrt() + 3.0 * sigma;
    let mut panels = 8usize;
    let mut prev = CompositeRule::new(&[0.0, upper], upper / panels as f64, 16).integrate(&f);
    while panels < 1 << 16 {
        panels *= 2;
        let cur = CompositeRule::new(&[0.0, upper], upper / panels as f64, 16).integrate(&f);
        if (cur - prev).abs() < tol {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::budget("integrate_halfline", format!("no convergence to {tol} with {panels} panels")))
}
