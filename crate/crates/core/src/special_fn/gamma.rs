use crate::error::{Error, Result};

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("log_gamma", format!("x must be positive and finite, got {x}")));
    }
    Ok(statrs::function::gamma::ln_gamma(x))
}
