use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec;
use crate::quadrature::{coefficients_up_to, CoefficientTable, Target};
use crate::special_fn::{hermite_laguerre_sweep, AlphaIndex};
use crate::sum::{csum, CompensatedSum};

/// Shell partial sums of `Σ |c_n| / (|n|+1)^β`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HardySumReport {
    pub beta: f64,
    pub nmax: usize,
    /// `partial_sums[N]` sums the shells `|n| <= N`.
    pub partial_sums: Vec<f64>,
    pub value: f64,
    /// Contribution of the last shell.
    pub last_shell: f64,
    /// `S(Nmax) - S(Nmax/2)`.
    pub cauchy_tail: f64,
    /// Dyadic differences `S(2^{j+1}) - S(2^j)`, starting at `2^4`.
    pub dyadic_tails: Vec<f64>,
    /// Least-squares slope of `S(N)` against `ln N` over dyadic `N >= 16`.
    pub log_slope: Option<f64>,
}

/// Slope, intercept and R² of `y ≈ c₁ x + c₂`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Option<(f64, f64, f64)> {
    let n = x.len();
    if n < 2 || y.len() != n {
        return None;
    }
    let mx = csum(x.iter().copied()) / n as f64;
    let my = csum(y.iter().copied()) / n as f64;
    let sxx = csum(x.iter().map(|v| (v - mx) * (v - mx)));
    let sxy = csum(x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)));
    let syy = csum(y.iter().map(|v| (v - my) * (v - my)));
    if sxx == 0.0 {
        return None;
    }
    let c1 = sxy / sxx;
    let c2 = my - c1 * mx;
    let ss_res = csum(x.iter().zip(y).map(|(a, b)| (b - c1 * a - c2).powi(2)));
    let r2 = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    Some((c1, c2, r2))
}

pub fn dyadic_points(lo: usize, hi: usize) -> Vec<usize> {
    let mut v = Vec::new();
    let mut n = lo.max(1);
    while n <= hi {
        v.push(n);
        n *= 2;
    }
    if v.last() != Some(&hi) && hi >= lo {
        v.push(hi);
    }
    v
}

/// Hardy sum from precomputed coefficients.
pub fn hardy_sum_from_table(table: &CoefficientTable, beta: f64) -> Result<HardySumReport> {
    if !(beta > 0.0) {
        return Err(Error::domain("hardy_sum", format!("beta = {beta} must be positive")));
    }
    let nmax = table.nmax;
    let mut acc = CompensatedSum::new();
    let mut partial_sums = Vec::with_capacity(nmax + 1);
    let mut last_shell = 0.0;
    for (s, shell) in table.shells().iter().enumerate() {
        let w = (s as f64 + 1.0).powf(-beta);
        last_shell = w * csum(shell.iter().map(|c| c.abs()));
        acc.add(last_shell);
        partial_sums.push(acc.value());
    }
    let value = partial_sums[nmax];
    let cauchy_tail = value - partial_sums[nmax / 2];
    let dyadic = dyadic_points(16, nmax);
    let dyadic_tails = dyadic.windows(2).map(|w| partial_sums[w[1]] - partial_sums[w[0]]).collect();
    let lx: Vec<f64> = dyadic.iter().map(|&n| (n as f64).ln()).collect();
    let ly: Vec<f64> = dyadic.iter().map(|&n| partial_sums[n]).collect();
    Ok(HardySumReport {
        beta,
        nmax,
        partial_sums,
        value,
        last_shell,
        cauchy_tail,
        dyadic_tails,
        log_slope: linear_fit(&lx, &ly).map(|f| f.0),
    })
}

/// `Σ_{|n| <= Nmax} |<f, φ_n^α>| / (|n|+1)^β`, shell by shell.
pub fn hardy_sum(f: &Target, alpha: &AlphaIndex, beta: f64, nmax: usize) -> Result<HardySumReport> {
    let table = coefficients_up_to(f, alpha, nmax)?;
    hardy_sum_from_table(&table, beta)
}

/// Largest ratio `|c_n| Π(n_i+1)^{1/12} / ‖f‖₁` over a table.
pub fn coefficient_decay_constant(table: &CoefficientTable, norm_l1: f64) -> f64 {
    let d = table.dim();
    let mut best = 0.0f64;
    for (s, shell) in table.shells().iter().enumerate() {
        for (idx, c) in crate::special_fn::MultiIndex::shell(d, s).iter().zip(shell) {
            let w: f64 = idx.entries().iter().map(|&k| (k as f64 + 1.0).powf(1.0 / 12.0)).product();
            best = best.max(c.abs() * w / norm_l1);
        }
    }
    best
}

/// Upper cap on `K` in [`uniform_phi_sum_scan`].
pub const UNIFORM_SCAN_CAP: usize = 1_000_000;

/// `Σ_{k=1}^K |φ_k^α(u)| / k^{3/4+ε}` over a grid of `u`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniformSumReport {
    pub alpha: f64,
    pub eps: f64,
    pub k: usize,
    pub u: Vec<f64>,
    pub sums: Vec<f64>,
    /// `S(K) - S(K/2)` per grid point.
    pub tails: Vec<f64>,
    pub max: f64,
    pub argmax: f64,
    pub max_tail: f64,
}

pub fn uniform_phi_sum_scan(alpha: f64, eps: f64, u: &[f64], k: usize) -> Result<UniformSumReport> {
    if !(alpha >= -0.5) {
        return Err(Error::range("uniform_phi_sum_scan", format!("alpha = {alpha} < -1/2")));
    }
    if !(eps >= 0.0) {
        return Err(Error::domain("uniform_phi_sum_scan", format!("eps = {eps} must be nonnegative")));
    }
    if k == 0 || k > UNIFORM_SCAN_CAP {
        return Err(Error::budget("uniform_phi_sum_scan", format!("K = {k} outside 1..={UNIFORM_SCAN_CAP}")));
    }
    if u.is_empty() || u.iter().any(|&v| !(v > 0.0)) {
        return Err(Error::domain("uniform_phi_sum_scan", "u grid must be nonempty and positive"));
    }
    let p = 0.75 + eps;
    let pairs = exec::try_map(u, |&x| {
        let phi = hermite_laguerre_sweep(alpha, x, k)?;
        let mut acc = CompensatedSum::new();
        let mut half = 0.0;
        for (j, v) in phi.iter().enumerate().skip(1) {
            acc.add(v.abs() * (j as f64).powf(-p));
            if j == k / 2 {
                half = acc.value();
            }
        }
        Ok((acc.value(), acc.value() - half))
    })?;
    let (sums, tails): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    let (i, max) = sums
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |b, (i, v)| if v > b.1 { (i, v) } else { b });
    let max_tail = tails.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(UniformSumReport { alpha, eps, k, u: u.to_vec(), sums, tails, max, argmax: u[i], max_tail })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardy::make_atom;
    use crate::quadrature::Factor1d;
    use approx::assert_relative_eq;

    #[test]
    fn single_basis_function() {
        let a = AlphaIndex::scalar(0.5).unwrap();
        for m in [0usize, 3] {
            let f = Target::Product(vec![Factor1d::basis(0.5, m).unwrap()]);
            let rep = hardy_sum(&f, &a, 0.75, 20).unwrap();
            assert_relative_eq!(rep.value, (m as f64 + 1.0).powf(-0.75), max_relative = 1e-8);
        }
    }

    #[test]
    fn zero_function() {
        let a = AlphaIndex::scalar(0.5).unwrap();
        let c = crate::quadrature::CellFunction::new(vec![vec![1.0, 2.0]], vec![0.0]).unwrap();
        let rep = hardy_sum(&Target::Cells(c), &a, 0.75, 50).unwrap();
        assert_eq!(rep.value, 0.0);
    }

    #[test]
    fn monotone_in_n_and_beta() {
        let atom = make_atom(1, &[2.0], 1.0, 0).unwrap();
        let a = AlphaIndex::scalar(0.5).unwrap();
        let table = coefficients_up_to(&atom.target(), &a, 300).unwrap();
        let r34 = hardy_sum_from_table(&table, 0.75).unwrap();
        let r1 = hardy_sum_from_table(&table, 1.0).unwrap();
        assert!(r34.partial_sums.windows(2).all(|w| w[1] >= w[0]));
        assert!(r1.value <= r34.value);
        assert!(coefficient_decay_constant(&table, atom.norm_l1()).is_finite());
    }

    #[test]
    fn fit_recovers_line() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y = [3.0, 5.0, 7.0, 9.0];
        let (c1, c2, r2) = linear_fit(&x, &y).unwrap();
        assert_relative_eq!(c1, 2.0);
        assert_relative_eq!(c2, 1.0);
        assert_relative_eq!(r2, 1.0);
    }

    #[test]
    fn uniform_scan_small() {
        let rep = uniform_phi_sum_scan(0.5, 0.25, &[0.5, 1.0, 2.0], 200).unwrap();
        assert_eq!(rep.sums.len(), 3);
        assert!(rep.max.is_finite() && rep.max > 0.0);
        let direct: f64 = (1..=200).map(|k| {
            crate::special_fn::hermite_laguerre_fn(0.5, k, 1.0).unwrap().abs() / (k as f64)
        }).sum();
        assert_relative_eq!(rep.sums[1], direct, max_relative = 1e-12);
        assert!(uniform_phi_sum_scan(0.5, 0.25, &[1.0], 0).is_err());
    }
}
