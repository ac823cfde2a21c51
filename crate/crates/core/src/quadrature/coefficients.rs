use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::gauss::CompositeRule;
use crate::error::{Error, Result};
use crate::exec;
use crate::special_fn::{hermite_sweep_unchecked, nu, validate_alpha, AlphaIndex, MultiIndex};
use crate::sum::{csum, CompensatedSum};

const MAIN_POINTS: usize = 16;
const CHECK_POINTS: usize = 12;

/// Default shell cap for coefficient tables: 2000 in one dimension, 200
/// otherwise.
pub fn default_cap(dim: usize) -> usize {
    if dim == 1 {
        2000
    } else {
        200
    }
}

/// Largest panel width that resolves `φ_k^α`, `k <= kmax`: a quarter of the
/// local half-wavelength `π/√ν`.
fn panel_width(alpha: f64, kmax: usize) -> f64 {
    (PI / (4.0 * nu(alpha, kmax).sqrt())).min(0.25)
}

/// Extra breakpoints geometrically graded toward 0, used when `φ^α` has a
/// non-smooth power `u^{α+1/2}` at the origin.
fn graded_breaks(edges: &[f64], alpha: f64) -> Vec<f64> {
    let p = alpha + 0.5;
    let smooth = (p - p.round()).abs() < 1e-12;
    let mut out = Vec::with_capacity(edges.len() + 16);
    if !smooth && edges.first() == Some(&0.0) && edges.len() > 1 {
        let first = edges[1].min(0.25);
        out.push(0.0);
        for j in (1..=14).rev() {
            out.push(first * 0.25f64.powi(j));
        }
        out.extend_from_slice(&edges[1..]);
    } else {
        out.extend_from_slice(edges);
    }
    out
}

/// `∫_{edges[i]}^{edges[i+1]} φ_k^α(u) du` for every interval `i` and every
/// `k <= kmax`, together with a per-entry error estimate (difference against
/// a lower-order rule on the same panels).
#[derive(Debug, Clone)]
pub struct IntervalIntegrals {
    pub kmax: usize,
    /// `values[i][k]`.
    pub values: Vec<Vec<f64>>,
    pub errors: Vec<Vec<f64>>,
}

pub fn interval_integrals(alpha: f64, kmax: usize, edges: &[f64]) -> Result<IntervalIntegrals> {
    validate_alpha("interval_integrals", alpha)?;
    if edges.len() < 2 || edges.windows(2).any(|w| !(w[1] > w[0])) || !(edges[0] >= 0.0) {
        return Err(Error::domain("interval_integrals", "edges must be increasing and nonnegative"));
    }
    let width = panel_width(alpha, kmax);
    let per_interval = exec::map_range(edges.len() - 1, |i| {
        let breaks = graded_breaks(&edges[i..=i + 1], alpha);
        let main = node_integrals(alpha, kmax, &CompositeRule::new(&breaks, width, MAIN_POINTS));
        let check = node_integrals(alpha, kmax, &CompositeRule::new(&breaks, width, CHECK_POINTS));
        let err = main.iter().zip(&check).map(|(a, b)| (a - b).abs()).collect::<Vec<_>>();
        (main, err)
    });
    let (values, errors) = per_interval.into_iter().unzip();
    Ok(IntervalIntegrals { kmax, values, errors })
}

fn node_integrals(alpha: f64, kmax: usize, rule: &CompositeRule) -> Vec<f64> {
    weighted_sweep(alpha, kmax, rule, |_| 1.0)
}

/// `Σ_j w_j g(x_j) φ_k(x_j)` for all `k`, compensated per `k`.
fn weighted_sweep<G: Fn(f64) -> f64>(alpha: f64, kmax: usize, rule: &CompositeRule, g: G) -> Vec<f64> {
    let mut acc = vec![CompensatedSum::new(); kmax + 1];
    let mut phi = Vec::with_capacity(kmax + 1);
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let gw = g(x) * w;
        if gw == 0.0 {
            continue;
        }
        hermite_sweep_unchecked(alpha, x, kmax, &mut phi);
        for (a, p) in acc.iter_mut().zip(&phi) {
            a.add(gw * p);
        }
    }
    acc.iter().map(|a| a.value()).collect()
}

/// Piecewise-constant function on a tensor grid of axis-aligned cells.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellFunction {
    edges: Vec<Vec<f64>>,
    /// Row-major over the cell grid (last coordinate fastest).
    values: Vec<f64>,
}

impl CellFunction {
    pub fn new(edges: Vec<Vec<f64>>, values: Vec<f64>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::Config("cell function needs at least one dimension".into()));
        }
        for e in &edges {
            if e.len() < 2 || e.windows(2).any(|w| !(w[1] > w[0])) || !(e[0] >= 0.0) {
                return Err(Error::domain("CellFunction::new", "edges must be increasing and nonnegative"));
            }
        }
        let cells: usize = edges.iter().map(|e| e.len() - 1).product();
        if values.len() != cells {
            return Err(Error::DimensionMismatch { expected: cells, got: values.len() });
        }
        Ok(Self { edges, values })
    }

    pub fn dim(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self, axis: usize) -> &[f64] {
        &self.edges[axis]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn shape(&self) -> Vec<usize> {
        self.edges.iter().map(|e| e.len() - 1).collect()
    }

    fn cell_volumes(&self) -> Vec<f64> {
        let widths: Vec<Vec<f64>> =
            self.edges.iter().map(|e| e.windows(2).map(|w| w[1] - w[0]).collect()).collect();
        let mut vols = vec![1.0];
        for w in &widths {
            vols = vols.iter().flat_map(|v| w.iter().map(move |x| v * x)).collect();
        }
        vols
    }

    /// `∫ f`.
    pub fn integral(&self) -> f64 {
        csum(self.values.iter().zip(self.cell_volumes()).map(|(v, m)| v * m))
    }

    /// `∫ f²`.
    pub fn norm_sq(&self) -> f64 {
        csum(self.values.iter().zip(self.cell_volumes()).map(|(v, m)| v * v * m))
    }

    /// `∫ |f|`.
    pub fn norm_l1(&self) -> f64 {
        csum(self.values.iter().zip(self.cell_volumes()).map(|(v, m)| v.abs() * m))
    }

    pub fn sup(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        if x.len() != self.dim() {
            return f64::NAN;
        }
        let mut flat = 0;
        for (e, &xi) in self.edges.iter().zip(x) {
            if xi < e[0] || xi >= e[e.len() - 1] {
                return 0.0;
            }
            let i = e.partition_point(|&b| b <= xi) - 1;
            flat = flat * (e.len() - 1) + i;
        }
        self.values[flat]
    }
}

/// A one-dimensional factor with known support breakpoints.
#[derive(Clone)]
pub struct Factor1d {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    breaks: Vec<f64>,
}

impl fmt::Debug for Factor1d {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Factor1d").field("breaks", &self.breaks).finish_non_exhaustive()
    }
}

impl Factor1d {
    /// `f` supported in `[breaks[0], breaks[last]]`, smooth between breaks.
    pub fn new<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F, breaks: Vec<f64>) -> Result<Self> {
        if breaks.len() < 2 || breaks.windows(2).any(|w| !(w[1] > w[0])) || !(breaks[0] >= 0.0) {
            return Err(Error::domain("Factor1d::new", "breaks must be increasing and nonnegative"));
        }
        Ok(Self { f: Arc::new(f), breaks })
    }

    /// `φ_m^α` itself, truncated where it is below rounding.
    pub fn basis(alpha: f64, m: usize) -> Result<Self> {
        validate_alpha("Factor1d::basis", alpha)?;
        let upper = (1.5 * nu(alpha, m)).sqrt() + 10.0;
        Self::new(move |u| crate::special_fn::hermite_laguerre_fn(alpha, m, u).unwrap_or(0.0), vec![0.0, upper])
    }

    /// `Σ_m w_m φ_m^α`.
    pub fn basis_combination(alpha: f64, weights: Vec<f64>) -> Result<Self> {
        validate_alpha("Factor1d::basis_combination", alpha)?;
        let m = weights.len().saturating_sub(1);
        let upper = (1.5 * nu(alpha, m)).sqrt() + 10.0;
        Self::new(
            move |u| {
                crate::special_fn::hermite_laguerre_sweep(alpha, u, m)
                    .map(|p| p.iter().zip(&weights).map(|(a, b)| a * b).sum())
                    .unwrap_or(0.0)
            },
            vec![0.0, upper],
        )
    }

    pub fn eval(&self, u: f64) -> f64 {
        if u < self.breaks[0] || u > self.breaks[self.breaks.len() - 1] {
            0.0
        } else {
            (self.f)(u)
        }
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    fn rule(&self, width: f64, npts: usize) -> CompositeRule {
        CompositeRule::new(&self.breaks, width, npts)
    }

    pub fn norm_sq(&self) -> f64 {
        self.rule(0.05, MAIN_POINTS).integrate(|u| (self.f)(u).powi(2))
    }
}

/// A function whose expansion coefficients can be computed.
#[derive(Debug, Clone)]
pub enum Target {
    Cells(CellFunction),
    Product(Vec<Factor1d>),
}

impl Target {
    pub fn dim(&self) -> usize {
        match self {
            Target::Cells(c) => c.dim(),
            Target::Product(f) => f.len(),
        }
    }

    pub fn norm_sq(&self) -> f64 {
        match self {
            Target::Cells(c) => c.norm_sq(),
            Target::Product(f) => f.iter().map(Factor1d::norm_sq).product(),
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            Target::Cells(c) => c.eval(x),
            Target::Product(f) => f.iter().zip(x).map(|(g, &u)| g.eval(u)).product(),
        }
    }
}

/// Coefficients `<f, φ_n^α>` for `|n| <= nmax`, stored shell by shell in
/// the lexicographic order of [`MultiIndex::shell`].
#[derive(Debug, Clone, Serialize)]
pub struct CoefficientTable {
    pub alpha: AlphaIndex,
    pub nmax: usize,
    shells: Vec<Vec<f64>>,
    /// Estimated absolute quadrature error, maximised over each shell.
    pub shell_error: Vec<f64>,
    /// `‖f‖₂²` when available.
    pub norm_sq: f64,
}

impl CoefficientTable {
    pub fn dim(&self) -> usize {
        self.alpha.dim()
    }

    pub fn shell(&self, s: usize) -> &[f64] {
        &self.shells[s]
    }

    pub fn shells(&self) -> &[Vec<f64>] {
        &self.shells
    }

    pub fn get(&self, n: &MultiIndex) -> Option<f64> {
        if n.dim() != self.dim() || n.length() > self.nmax {
            return None;
        }
        let shell = MultiIndex::shell(self.dim(), n.length());
        let pos = shell.binary_search_by(|m| m.entries().cmp(n.entries())).ok()?;
        Some(self.shells[n.length()][pos])
    }

    pub fn sum_squares(&self) -> f64 {
        csum(self.shells.iter().flatten().map(|c| c * c))
    }

    /// Bessel's inequality `Σ c_n² <= ‖f‖² + tol`.
    pub fn bessel_ok(&self, tol: f64) -> bool {
        self.sum_squares() <= self.norm_sq + tol
    }
}

/// Coefficients with the default cap.
pub fn coefficients_up_to(f: &Target, alpha: &AlphaIndex, nmax: usize) -> Result<CoefficientTable> {
    coefficients_up_to_with_cap(f, alpha, nmax, default_cap(alpha.dim()))
}

pub fn coefficients_up_to_with_cap(
    f: &Target,
    alpha: &AlphaIndex,
    nmax: usize,
    cap: usize,
) -> Result<CoefficientTable> {
    let d = alpha.dim();
    if f.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: f.dim() });
    }
    if nmax > cap {
        return Err(Error::budget("coefficients_up_to", format!("nmax = {nmax} exceeds cap {cap}")));
    }
    // Per-axis coefficient vectors (product targets) or interval integrals
    // (cell targets), then a contraction over the cell grid.
    let (shells, shell_error) = match f {
        Target::Product(factors) => {
            let per_axis = factors
                .iter()
                .enumerate()
                .map(|(i, g)| factor_coefficients(g, alpha.get(i), nmax))
                .collect::<Result<Vec<_>>>()?;
            product_shells(&per_axis, nmax)
        }
        Target::Cells(c) => {
            let ints = (0..d)
                .map(|i| interval_integrals(alpha.get(i), nmax, c.edges(i)))
                .collect::<Result<Vec<_>>>()?;
            match d {
                1 => cells_1d(c, &ints[0], nmax),
                2 => cells_2d(c, &ints[0], &ints[1], nmax),
                _ => {
                    return Err(Error::domain("coefficients_up_to", "cell targets support d <= 2"));
                }
            }
        }
    };
    Ok(CoefficientTable { alpha: alpha.clone(), nmax, shells, shell_error, norm_sq: f.norm_sq() })
}

/// `<f, φ_n^α>` for a single multi-index.
pub fn coefficient(f: &Target, alpha: &AlphaIndex, n: &MultiIndex) -> Result<f64> {
    if n.dim() != alpha.dim() {
        return Err(Error::DimensionMismatch { expected: alpha.dim(), got: n.dim() });
    }
    let table = coefficients_up_to_with_cap(f, alpha, n.length(), usize::MAX)?;
    table.get(n).ok_or_else(|| Error::domain("coefficient", "index not in table"))
}

/// (values, error estimates) of a 1-D factor.
fn factor_coefficients(g: &Factor1d, alpha: f64, kmax: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let width = panel_width(alpha, kmax);
    let breaks = graded_breaks(g.breaks(), alpha);
    let make = |npts: usize| {
        let rule = CompositeRule::new(&breaks, width, npts);
        let chunks: Vec<(usize, usize)> =
            (0..rule.panels()).map(|p| (rule.panel_start[p], rule.panel_start[p + 1])).collect();
        // One partial sum per panel, reduced in panel order.
        let partial = exec::map(&chunks, |&(lo, hi)| {
            let sub = CompositeRule {
                nodes: rule.nodes[lo..hi].to_vec(),
                weights: rule.weights[lo..hi].to_vec(),
                panel_start: vec![0, hi - lo],
            };
            weighted_sweep(alpha, kmax, &sub, |u| (g.f)(u))
        });
        let mut acc = vec![CompensatedSum::new(); kmax + 1];
        for p in &partial {
            for (a, v) in acc.iter_mut().zip(p) {
                a.add(*v);
            }
        }
        acc.iter().map(|a| a.value()).collect::<Vec<f64>>()
    };
    let main = make(MAIN_POINTS);
    let check = make(CHECK_POINTS);
    let err = main.iter().zip(&check).map(|(a, b)| (a - b).abs()).collect();
    Ok((main, err))
}

fn product_shells(per_axis: &[(Vec<f64>, Vec<f64>)], nmax: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    let d = per_axis.len();
    let mut shells = Vec::with_capacity(nmax + 1);
    let mut errs = Vec::with_capacity(nmax + 1);
    for s in 0..=nmax {
        let idx = MultiIndex::shell(d, s);
        let mut vals = Vec::with_capacity(idx.len());
        let mut emax: f64 = 0.0;
        for n in &idx {
            let mut v: f64 = 1.0;
            let mut e: f64 = 0.0;
            for (i, &k) in n.entries().iter().enumerate() {
                let (c, ce) = (&per_axis[i].0[k], &per_axis[i].1[k]);
                e = e * c.abs() + v.abs() * ce;
                v *= c;
            }
            vals.push(v);
            emax = emax.max(e);
        }
        shells.push(vals);
        errs.push(emax);
    }
    (shells, errs)
}

fn cells_1d(c: &CellFunction, a: &IntervalIntegrals, nmax: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    let v = c.values();
    let mut shells = Vec::with_capacity(nmax + 1);
    let mut errs = Vec::with_capacity(nmax + 1);
    for k in 0..=nmax {
        shells.push(vec![csum(v.iter().zip(&a.values).map(|(vi, ai)| vi * ai[k]))]);
        errs.push(csum(v.iter().zip(&a.errors).map(|(vi, ei)| vi.abs() * ei[k])));
    }
    (shells, errs)
}

fn cells_2d(
    c: &CellFunction,
    a1: &IntervalIntegrals,
    a2: &IntervalIntegrals,
    nmax: usize,
) -> (Vec<Vec<f64>>, Vec<f64>) {
    let shape = c.shape();
    let (n1, n2) = (shape[0], shape[1]);
    let v = c.values();
    // b[i][k2] = Σ_j V[i][j] A2[j][k2], and its absolute counterpart for
    // the error estimate.
    let rows: Vec<(Vec<f64>, Vec<f64>, Vec<f64>)> = exec::map_range(n1, |i| {
        let mut b = vec![CompensatedSum::new(); nmax + 1];
        let mut babs = vec![0.0; nmax + 1];
        let mut berr = vec![0.0; nmax + 1];
        for j in 0..n2 {
            let vij = v[i * n2 + j];
            if vij == 0.0 {
                continue;
            }
            for k in 0..=nmax {
                b[k].add(vij * a2.values[j][k]);
                babs[k] += vij.abs() * a2.values[j][k].abs();
                berr[k] += vij.abs() * a2.errors[j][k];
            }
        }
        (b.iter().map(|x| x.value()).collect(), babs, berr)
    });
    let shells_err: Vec<(Vec<f64>, f64)> = exec::map_range(nmax + 1, |s| {
        let mut vals = Vec::with_capacity(s + 1);
        let mut emax: f64 = 0.0;
        for k1 in 0..=s {
            let k2 = s - k1;
            let mut acc = CompensatedSum::new();
            let mut e = 0.0;
            for (i, (b, babs, berr)) in rows.iter().enumerate() {
                acc.add(a1.values[i][k1] * b[k2]);
                e += a1.errors[i][k1] * babs[k2] + a1.values[i][k1].abs() * berr[k2];
            }
            vals.push(acc.value());
            emax = emax.max(e);
        }
        (vals, emax)
    });
    shells_err.into_iter().unzip()
}

/// `max_{n,m<=nmax} |<φ_n^α, φ_m^α> - δ_nm|` by composite quadrature on
/// `[0, √(3ν/2) + 12]`.
pub fn gram_defect(alpha: f64, nmax: usize) -> Result<f64> {
    validate_alpha("gram_defect", alpha)?;
    let upper = (1.5 * nu(alpha, nmax)).sqrt() + 12.0;
    let breaks = graded_breaks(&[0.0, upper], alpha);
    let rule = CompositeRule::new(&breaks, panel_width(alpha, nmax), MAIN_POINTS);
    let m = nmax + 1;
    let partial: Vec<Vec<f64>> = exec::map_range(rule.panels(), |p| {
        let mut g = vec![0.0; m * m];
        let mut phi = Vec::with_capacity(m);
        for j in rule.panel_start[p]..rule.panel_start[p + 1] {
            hermite_sweep_unchecked(alpha, rule.nodes[j], nmax, &mut phi);
            let w = rule.weights[j];
            for a in 0..m {
                for b in 0..=a {
                    g[a * m + b] += w * phi[a] * phi[b];
                }
            }
        }
        g
    });
    let mut worst: f64 = 0.0;
    for a in 0..m {
        for b in 0..=a {
            let v = csum(partial.iter().map(|g| g[a * m + b]));
            let target = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((v - target).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::hermite_laguerre_fn;
    use approx::assert_relative_eq;

    #[test]
    fn orthonormal_basis_small() {
        for &alpha in &[-0.5, 0.5, 1.0, 2.5] {
            let d = gram_defect(alpha, 12).unwrap();
            assert!(d < 1e-12, "alpha={alpha} defect={d}");
        }
    }

    #[test]
    fn basis_coefficients() {
        let a = AlphaIndex::scalar(0.5).unwrap();
        let t = Target::Product(vec![Factor1d::basis(0.5, 3).unwrap()]);
        let table = coefficients_up_to(&t, &a, 6).unwrap();
        for k in 0..=6 {
            let expected = if k == 3 { 1.0 } else { 0.0 };
            assert!((table.shell(k)[0] - expected).abs() < 1e-10, "k={k}");
        }
        assert!(table.bessel_ok(1e-8));
    }

    #[test]
    fn linear_combination() {
        let a = AlphaIndex::scalar(1.0).unwrap();
        let t = Target::Product(vec![Factor1d::basis_combination(1.0, vec![1.0, 2.0]).unwrap()]);
        let table = coefficients_up_to(&t, &a, 4).unwrap();
        let got: Vec<f64> = (0..=4).map(|k| table.shell(k)[0]).collect();
        for (g, e) in got.iter().zip([1.0, 2.0, 0.0, 0.0, 0.0]) {
            assert!((g - e).abs() < 1e-10, "{got:?}");
        }
        let single = coefficients_up_to(&t, &a, 0).unwrap();
        assert_eq!(single.shells().len(), 1);
    }

    #[test]
    fn step_function_against_dense_trapezoid() {
        let cells = CellFunction::new(vec![vec![1.0, 2.0, 3.0]], vec![1.0, -1.0]).unwrap();
        let a = AlphaIndex::scalar(0.5).unwrap();
        let c = coefficient(&Target::Cells(cells), &a, &MultiIndex::new(vec![0]).unwrap()).unwrap();
        // 10^6-point trapezoid on each cell.
        let trap = |lo: f64, hi: f64| {
            let n = 1_000_000;
            let h = (hi - lo) / n as f64;
            let f = |u: f64| hermite_laguerre_fn(0.5, 0, u).unwrap();
            let inner: f64 = (1..n).map(|i| f(lo + i as f64 * h)).sum();
            h * (inner + 0.5 * (f(lo) + f(hi)))
        };
        assert!((c - (trap(1.0, 2.0) - trap(2.0, 3.0))).abs() < 1e-7);
    }

    #[test]
    fn cells_2d_factorise() {
        // A rank-one cell function is a product of two 1-D step functions.
        let e1 = vec![0.5, 1.0, 1.5];
        let e2 = vec![0.2, 0.9, 1.1, 2.0];
        let v1 = [1.0, -2.0];
        let v2 = [0.5, 1.0, -1.0];
        let vals: Vec<f64> = v1.iter().flat_map(|a| v2.iter().map(move |b| a * b)).collect();
        let c2 = CellFunction::new(vec![e1.clone(), e2.clone()], vals).unwrap();
        let alpha = AlphaIndex::new(vec![0.5, -0.5]).unwrap();
        let t2 = coefficients_up_to(&Target::Cells(c2), &alpha, 20).unwrap();
        let c1a = CellFunction::new(vec![e1], v1.to_vec()).unwrap();
        let c1b = CellFunction::new(vec![e2], v2.to_vec()).unwrap();
        let ta = coefficients_up_to(&Target::Cells(c1a), &AlphaIndex::scalar(0.5).unwrap(), 20).unwrap();
        let tb = coefficients_up_to(&Target::Cells(c1b), &AlphaIndex::scalar(-0.5).unwrap(), 20).unwrap();
        for s in 0..=20 {
            for (pos, n) in MultiIndex::shell(2, s).iter().enumerate() {
                let e = ta.shell(n.entries()[0])[0] * tb.shell(n.entries()[1])[0];
                assert!((t2.shell(s)[pos] - e).abs() < 1e-12);
            }
        }
        assert!(t2.bessel_ok(1e-10));
        assert!(t2.shell_error.iter().all(|&e| e < 1e-10));
    }

    #[test]
    fn cell_function_basics() {
        let c = CellFunction::new(vec![vec![1.0, 2.0, 3.0]], vec![0.5, -0.5]).unwrap();
        assert_eq!(c.integral(), 0.0);
        assert_relative_eq!(c.norm_sq(), 0.5);
        assert_eq!(c.eval(&[1.5]), 0.5);
        assert_eq!(c.eval(&[2.0]), -0.5);
        assert_eq!(c.eval(&[3.0]), 0.0);
        assert!(CellFunction::new(vec![vec![1.0, 2.0]], vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let t = Target::Product(vec![Factor1d::basis(0.5, 0).unwrap()]);
        let a = AlphaIndex::scalar(0.5).unwrap();
        assert!(coefficients_up_to(&t, &a, 2001).unwrap_err().is_budget());
    }
}
