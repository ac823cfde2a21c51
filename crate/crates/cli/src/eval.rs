use laguerre_hardy::kernel::{kernel_closed, kernel_dx, SmoothingParam, PHI_SUP_BOUND};
use laguerre_hardy::report::{num, Assertion, ScanReport, Table};
use laguerre_hardy::special_fn::{
    envelope, hermite_laguerre_at_zero, hermite_laguerre_dx, hermite_laguerre_fn, is_hermite_class, BOUNDARY_EPS,
};
use serde::Serialize;
use serde_json::Value;

use crate::config::{config_err, CliResult};

#[derive(Debug, Clone, Serialize)]
pub struct EvalConfig {
    pub alpha: Vec<f64>,
    pub k: Vec<usize>,
    pub u: Vec<f64>,
    pub r: Option<Vec<f64>>,
    pub y: Option<Vec<f64>>,
    pub envelope_c: f64,
}

impl EvalConfig {
    pub fn validate(&self) -> CliResult<()> {
        if let Some(a) = self.alpha.iter().find(|&&a| !(a > -1.0)) {
            return Err(config_err("alpha", format!("{a} violates alpha > -1")));
        }
        if let Some(u) = self.u.iter().find(|&&u| !(u >= 0.0)) {
            return Err(config_err("u", format!("{u} violates u >= 0")));
        }
        if let Some(y) = self.y.iter().flatten().find(|&&y| !(y > 0.0)) {
            return Err(config_err("y", format!("{y} violates y > 0")));
        }
        if let Some(r) = self.r.iter().flatten().find(|&&r| !(r > 0.0 && r < 1.0)) {
            return Err(config_err("r", format!("{r} violates 0 < r < 1")));
        }
        if self.r.is_some() && self.u.iter().any(|&u| u < BOUNDARY_EPS) {
            return Err(config_err("u", "kernel values need every u > 1e-8"));
        }
        if !(self.envelope_c > 0.0) {
            return Err(config_err("envelope_c", "must be positive"));
        }
        Ok(())
    }
}

/// `φ_k^α(u)` rows and, when `r` is given, kernel rows. Arguments below
/// the boundary threshold report the `u = 0` limit and are flagged.
pub fn run(cfg: &EvalConfig, seed: u64) -> CliResult<ScanReport> {
    cfg.validate()?;
    let echo = serde_json::to_value(cfg).expect("config serialises");
    let mut rep = ScanReport::new("eval", seed, echo);
    let mut t = Table::new("phi", &["alpha", "k", "u", "limit", "phi", "dphi", "envelope", "regime"]);
    let mut sup = 0.0f64;
    for &a in &cfg.alpha {
        for &k in &cfg.k {
            for &u in &cfg.u {
                let limit = u < BOUNDARY_EPS;
                let phi = if limit { hermite_laguerre_at_zero(a, k)? } else { hermite_laguerre_fn(a, k, u)? };
                let dphi = if is_hermite_class(a) && !limit { num(hermite_laguerre_dx(a, k, u)?) } else { Value::Null };
                let (env, regime) = if limit {
                    (Value::Null, Value::Null)
                } else {
                    let e = envelope(a, k, u, cfg.envelope_c)?;
                    (num(e.bound), Value::from(e.regime.as_str()))
                };
                if a >= -0.5 {
                    sup = sup.max(phi.abs());
                }
                t.push(vec![num(a), Value::from(k), num(u), Value::from(limit), num(phi), dphi, env, regime]);
            }
        }
    }
    rep.tables.push(t);
    rep.summary.insert("max_abs_phi".into(), num(sup));
    rep.push_assertion(Assertion::at_most("uniform bound", sup, PHI_SUP_BOUND, "sup_u |φ_k^α(u)| ≤ 1.1 for α ≥ −1/2"));
    if let Some(rs) = &cfg.r {
        let ys = cfg.y.clone().unwrap_or_else(|| cfg.u.clone());
        let mut kt = Table::new("kernel", &["alpha", "r", "x", "y", "kernel", "kernel_dx"]);
        for &a in &cfg.alpha {
            for &rv in rs {
                let r = SmoothingParam::new(rv)?;
                for &x in &cfg.u {
                    for &y in &ys {
                        let v = kernel_closed(a, &r, x, y)?;
                        let dx = if is_hermite_class(a) { num(kernel_dx(a, &r, x, y)?) } else { Value::Null };
                        kt.push(vec![num(a), num(rv), num(x), num(y), num(v), dx]);
                    }
                }
            }
        }
        rep.tables.push(kt);
    }
    Ok(rep)
}
