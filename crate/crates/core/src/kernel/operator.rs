use super::closed::{ln_kernel_closed, SmoothingParam};
use crate::error::{Error, Result};
use crate::exec;
use crate::quadrature::{CellFunction, CoefficientTable, CompositeRule, Target};
use crate::special_fn::{hermite_laguerre_sweep, AlphaIndex, EvalPoint, MultiIndex};
use crate::sum::{csum, CompensatedSum};

const NPTS: usize = 16;
const GRAM_NPTS: usize = 8;
/// Half-width of the Gaussian band in units of the kernel width.
const BAND: f64 = 12.0;

fn kernel_value(alpha: f64, r: &SmoothingParam, x: f64, y: f64) -> f64 {
    if x <= 0.0 || y <= 0.0 {
        return 0.0;
    }
    ln_kernel_closed(alpha, r, x, y).map(f64::exp).unwrap_or(f64::NAN)
}

/// Breakpoints of `[a, b]` refined at the band `x ± 12w`, with the panel
/// width to use on each resulting piece.
fn banded_pieces(a: f64, b: f64, x: f64, w: f64) -> Vec<(f64, f64, f64)> {
    let lo = (x - BAND * w).clamp(a, b);
    let hi = (x + BAND * w).clamp(a, b);
    let fine = (0.5 * w).min(0.25);
    [(a, lo, 0.25), (lo, hi, fine), (hi, b, 0.25)].into_iter().filter(|p| p.1 > p.0).collect()
}

/// `∫_a^b R_r^α(x, y) g(y) dy` with `g` smooth on `[a, b]`.
fn integrate_against<G: Fn(f64) -> f64>(alpha: f64, r: &SmoothingParam, x: f64, a: f64, b: f64, g: G) -> f64 {
    let w = r.width();
    let mut acc = CompensatedSum::new();
    for (lo, hi, width) in banded_pieces(a, b, x, w) {
        let rule = CompositeRule::new(&[lo, hi], width, NPTS);
        for (&y, &wt) in rule.nodes.iter().zip(&rule.weights) {
            acc.add(wt * kernel_value(alpha, r, x, y) * g(y));
        }
    }
    acc.value()
}

/// `(R_r f)(x) = ∫ R_r(x, y) f(y) dy` by quadrature against the kernel.
pub fn apply_operator(alpha: &AlphaIndex, r: &SmoothingParam, f: &Target, x: &EvalPoint) -> Result<f64> {
    let d = alpha.dim();
    for got in [f.dim(), x.dim()] {
        if got != d {
            return Err(Error::DimensionMismatch { expected: d, got });
        }
    }
    let v = match f {
        Target::Product(factors) => {
            let mut prod = 1.0;
            for (i, g) in factors.iter().enumerate() {
                let br = g.breaks();
                let mut acc = 0.0;
                for piece in br.windows(2) {
                    acc += integrate_against(alpha.get(i), r, x.coords()[i], piece[0], piece[1], |u| g.eval(u));
                }
                prod *= acc;
            }
            prod
        }
        Target::Cells(c) => {
            let per_axis: Vec<Vec<f64>> = (0..d)
                .map(|i| {
                    c.edges(i)
                        .windows(2)
                        .map(|e| integrate_against(alpha.get(i), r, x.coords()[i], e[0], e[1], |_| 1.0))
                        .collect()
                })
                .collect();
            contract(c, &per_axis)
        }
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::budget("apply_operator", "non-finite quadrature result"))
    }
}

/// `Σ_cells V_cell Π_i a_i[cell_i]`.
fn contract(c: &CellFunction, per_axis: &[Vec<f64>]) -> f64 {
    let shape = c.shape();
    let mut acc = CompensatedSum::new();
    let mut idx = vec![0usize; shape.len()];
    for &v in c.values() {
        if v != 0.0 {
            let mut p = v;
            for (i, &k) in idx.iter().enumerate() {
                p *= per_axis[i][k];
            }
            acc.add(p);
        }
        for ax in (0..shape.len()).rev() {
            idx[ax] += 1;
            if idx[ax] < shape[ax] {
                break;
            }
            idx[ax] = 0;
        }
    }
    acc.value()
}

/// `Σ_{|n|<=N} r^{|n|} c_n φ_n(x)` from a coefficient table.
pub fn apply_operator_spectral(table: &CoefficientTable, r: &SmoothingParam, x: &EvalPoint) -> Result<f64> {
    let d = table.dim();
    if x.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: x.dim() });
    }
    let sweeps = (0..d)
        .map(|i| hermite_laguerre_sweep(table.alpha.get(i), x.coords()[i], table.nmax))
        .collect::<Result<Vec<_>>>()?;
    let mut acc = CompensatedSum::new();
    let mut rs = 1.0;
    for s in 0..=table.nmax {
        let shell = table.shell(s);
        for (n, c) in MultiIndex::shell(d, s).iter().zip(shell) {
            let mut p = rs * c;
            for (i, &k) in n.entries().iter().enumerate() {
                p *= sweeps[i][k];
            }
            acc.add(p);
        }
        rs *= r.r();
    }
    Ok(acc.value())
}

/// `‖R_r f‖₂² = Σ r^{2|n|} c_n²` from a coefficient table.
pub fn spectral_norm_sq(table: &CoefficientTable, r: &SmoothingParam) -> f64 {
    let r2 = r.r() * r.r();
    let mut acc = CompensatedSum::new();
    let mut rs = 1.0;
    for shell in table.shells() {
        acc.add(rs * csum(shell.iter().map(|c| c * c)));
        rs *= r2;
        if rs == 0.0 {
            break;
        }
    }
    acc.value()
}

/// `M[i][k] = ∫_{X_i} ∫_{X_k} R_s^α(x, y) dy dx` for consecutive intervals
/// `X_i = [edges[i], edges[i+1]]`, row-major.
///
/// Each block is integrated in the coordinates `δ = y - x`, `m = (x + y)/2`.
/// In `δ` the integrand is a Gaussian of width `w` restricted to the band
/// `|δ| <= 12w`, with kinks where the `m`-range changes shape; in `m` it is
/// smooth on the scale of the cells. Blocks farther apart than the band are
/// zero to double precision and skipped.
pub fn kernel_gram_1d(alpha: f64, s: &SmoothingParam, edges: &[f64]) -> Result<Vec<f64>> {
    crate::special_fn::validate_alpha("kernel_gram_1d", alpha)?;
    if edges.len() < 2 || edges.windows(2).any(|e| !(e[1] > e[0])) || !(edges[0] >= 0.0) {
        return Err(Error::domain("kernel_gram_1d", "edges must be increasing and nonnegative"));
    }
    let n = edges.len() - 1;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |k| (i, k))).collect();
    let vals = exec::map(&pairs, |&(i, k)| gram_block(alpha, s, edges[i], edges[i + 1], edges[k], edges[k + 1]));
    let mut m = vec![0.0; n * n];
    for (&(i, k), v) in pairs.iter().zip(vals) {
        m[i * n + k] = v;
        m[k * n + i] = v;
    }
    if m.iter().any(|v| !v.is_finite()) {
        return Err(Error::budget("kernel_gram_1d", "non-finite block integral"));
    }
    Ok(m)
}

fn gram_block(alpha: f64, s: &SmoothingParam, a: f64, b: f64, c: f64, d: f64) -> f64 {
    let w = s.width();
    let band = BAND * w;
    let gap = (c - b).max(a - d).max(0.0);
    if gap > band {
        return 0.0;
    }
    let dlo = (c - b).max(-band);
    let dhi = (d - a).min(band);
    if !(dhi > dlo) {
        return 0.0;
    }
    let mut breaks = vec![dlo, dhi];
    for k in [c - a, d - b, 0.0] {
        if k > dlo && k < dhi {
            breaks.push(k);
        }
    }
    breaks.sort_by(|p, q| p.partial_cmp(q).unwrap());
    breaks.dedup();
    let drule = CompositeRule::new(&breaks, (0.5 * w).min(0.25), GRAM_NPTS);
    let mut acc = CompensatedSum::new();
    for (&delta, &wd) in drule.nodes.iter().zip(&drule.weights) {
        let mlo = (a + 0.5 * delta).max(c - 0.5 * delta);
        let mhi = (b + 0.5 * delta).min(d - 0.5 * delta);
        if !(mhi > mlo) {
            continue;
        }
        let mrule = CompositeRule::new(&[mlo, mhi], 0.25, GRAM_NPTS);
        let inner = csum(
            mrule
                .nodes
                .iter()
                .zip(&mrule.weights)
                .map(|(&m, &wm)| wm * kernel_value(alpha, s, m - 0.5 * delta, m + 0.5 * delta)),
        );
        acc.add(wd * inner);
    }
    acc.value()
}

/// `‖R_r f‖₂²` for a cell function via `<f, R_{r²} f>` and per-axis Gram
/// matrices. Supports `d <= 2`.
pub fn cell_norm_sq_kernel(alpha: &AlphaIndex, r: &SmoothingParam, f: &CellFunction) -> Result<f64> {
    let d = alpha.dim();
    if f.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: f.dim() });
    }
    let s = r.squared();
    let v = f.values();
    let q = match d {
        1 => {
            let m = kernel_gram_1d(alpha.get(0), &s, f.edges(0))?;
            let n = v.len();
            let mut acc = CompensatedSum::new();
            for i in 0..n {
                for k in 0..n {
                    acc.add(v[i] * m[i * n + k] * v[k]);
                }
            }
            acc.value()
        }
        2 => {
            let m1 = kernel_gram_1d(alpha.get(0), &s, f.edges(0))?;
            let m2 = kernel_gram_1d(alpha.get(1), &s, f.edges(1))?;
            let shape = f.shape();
            let (n1, n2) = (shape[0], shape[1]);
            // tr(Vᵀ M1 V M2): first P = M1 V (n1 × n2), then Σ_{k,j} P[k][j] (V M2)[k][j].
            let mut p = vec![0.0; n1 * n2];
            let mut vm = vec![0.0; n1 * n2];
            for i in 0..n1 {
                for j in 0..n2 {
                    p[i * n2 + j] = csum((0..n1).map(|k| m1[i * n1 + k] * v[k * n2 + j]));
                    vm[i * n2 + j] = csum((0..n2).map(|l| v[i * n2 + l] * m2[l * n2 + j]));
                }
            }
            csum(p.iter().zip(&vm).map(|(a, b)| a * b))
        }
        _ => return Err(Error::domain("cell_norm_sq_kernel", "supports d <= 2")),
    };
    Ok(q.max(0.0))
}
