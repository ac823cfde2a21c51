use serde::Serialize;

use super::atom::Atom;
use crate::error::{Error, Result};
use crate::exec;
use crate::kernel::{cell_norm_sq_kernel, spectral_norm_sq, SmoothingParam};
use crate::quadrature::{coefficients_up_to_with_cap, gauss_legendre, CoefficientTable, CompositeRule};
use crate::special_fn::AlphaIndex;
use crate::sum::csum;

/// `‖R_r a‖₂` comes from the coefficient table for `r <= SPECTRAL_R_MAX`
/// and from the kernel Gram matrices above.
pub const SPECTRAL_R_MAX: f64 = 0.9;
const PANEL_NPTS: usize = 8;

fn spectral_shells(d: usize) -> usize {
    if d == 1 {
        400
    } else {
        200
    }
}

/// `‖R_r a‖₂` for one atom, switching between the spectral and kernel routes.
pub struct AtomNorm<'a> {
    atom: &'a Atom,
    alpha: &'a AlphaIndex,
    table: CoefficientTable,
}

impl<'a> AtomNorm<'a> {
    pub fn new(atom: &'a Atom, alpha: &'a AlphaIndex) -> Result<Self> {
        if alpha.dim() != atom.dim {
            return Err(Error::DimensionMismatch { expected: atom.dim, got: alpha.dim() });
        }
        if !alpha.all_hermite_class() {
            return Err(Error::range("atom_r_integral", format!("alpha = {:?} is outside the hermite class", alpha.values())));
        }
        let n = spectral_shells(atom.dim);
        let table = coefficients_up_to_with_cap(&atom.target(), alpha, n, n)?;
        Ok(AtomNorm { atom, alpha, table })
    }

    pub fn table(&self) -> &CoefficientTable {
        &self.table
    }

    pub fn norm(&self, r: &SmoothingParam) -> Result<f64> {
        let sq = if r.r() <= SPECTRAL_R_MAX {
            spectral_norm_sq(&self.table, r)
        } else {
            cell_norm_sq_kernel(self.alpha, r, &self.atom.cells)?
        };
        Ok(sq.sqrt())
    }
}

/// Panel breaks in `s` for the substitution `r = 1 - s⁴`: one panel below
/// `s_min`, geometric panels from there to the route switch, two above.
fn s_breaks(atom: &Atom) -> Vec<f64> {
    let s_cross = (1.0 - SPECTRAL_R_MAX).powf(0.25);
    let h = atom.min_cell_width();
    let s_min = (0.1 * h.sqrt()).min(0.25 * s_cross);
    let n = (s_cross / s_min).log2().ceil().max(1.0) as usize;
    let ratio = (s_cross / s_min).powf(1.0 / n as f64);
    let mut b = vec![0.0, s_min];
    for i in 1..n {
        b.push(s_min * ratio.powi(i as i32));
    }
    b.push(s_cross);
    b.push(0.5 * (s_cross + 1.0));
    b.push(1.0);
    b
}

fn bisect(breaks: &[f64], levels: u32) -> Vec<f64> {
    let mut out = breaks.to_vec();
    for _ in 0..levels {
        let mut next = Vec::with_capacity(2 * out.len());
        for w in out.windows(2) {
            next.push(w[0]);
            next.push(0.5 * (w[0] + w[1]));
        }
        next.push(*out.last().unwrap());
        out = next;
    }
    out
}

/// Integral on a mesh refined `levels` times by bisection.
fn r_integral_on_mesh(norm: &AtomNorm, levels: u32) -> Result<(f64, usize)> {
    let d = norm.atom.dim as i32;
    let breaks = bisect(&s_breaks(norm.atom), levels);
    let rule = CompositeRule::new(&breaks, f64::INFINITY, PANEL_NPTS);
    let vals = exec::try_map(&rule.nodes, |&s| {
        let r = SmoothingParam::from_one_minus(s.powi(4))?;
        Ok(4.0 * s.powi(d - 1) * norm.norm(&r)?)
    })?;
    if vals.iter().any(|v| !v.is_finite()) {
        return Err(Error::budget("atom_r_integral", "non-finite integrand"));
    }
    Ok((csum(vals.iter().zip(&rule.weights).map(|(v, w)| v * w)), rule.nodes.len()))
}

/// `∫₀¹ ‖R_r a‖₂ (1-r)^{(d-4)/4} dr`.
///
/// With `r = 1 - s⁴` the weight becomes `4 s^{d-1}`, regular at both ends
/// for every `d >= 1`. The mesh is graded toward `s = 0` down to a tenth of
/// the square root of the smallest cell width, where `R_r a` resolves the
/// profile, and uses 8 Gauss points per panel.
pub fn atom_r_integral(atom: &Atom, alpha: &AlphaIndex) -> Result<f64> {
    let norm = AtomNorm::new(atom, alpha)?;
    Ok(r_integral_on_mesh(&norm, 0)?.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RIntegralReport {
    pub value: f64,
    /// Same integral with every panel bisected.
    pub doubled: f64,
    /// `|doubled - value| / |doubled|`.
    pub rel_change: f64,
    pub nodes: usize,
    /// `4 ‖a‖₂`, the bound from `‖R_r a‖₂ <= ‖a‖₂` in d = 1.
    pub contraction_bound: f64,
}

/// [`atom_r_integral`] together with its mesh-doubling check.
pub fn atom_r_integral_report(atom: &Atom, alpha: &AlphaIndex) -> Result<RIntegralReport> {
    let norm = AtomNorm::new(atom, alpha)?;
    let (value, nodes) = r_integral_on_mesh(&norm, 0)?;
    let (doubled, _) = r_integral_on_mesh(&norm, 1)?;
    Ok(RIntegralReport {
        value,
        doubled,
        rel_change: (doubled - value).abs() / doubled.abs(),
        nodes,
        contraction_bound: 4.0 * atom.norm_l2(),
    })
}

/// `(I, I (n+1)^{3d/4})` with `I = ∫₀¹ r^{2n} (1-r)^{(3d-4)/4} dr`.
///
/// After `r = 1 - s⁴` the integrand is the polynomial
/// `4 s^{3d-1} (1 - s⁴)^{2n}`, which a Gauss rule of `4n + ⌈3d/2⌉` points
/// integrates exactly.
pub fn beta_identity_check(n_abs: usize, d: usize) -> Result<(f64, f64)> {
    if d == 0 {
        return Err(Error::domain("beta_identity_check", "d must be at least 1"));
    }
    let npts = 4 * n_abs + (3 * d).div_ceil(2) + 1;
    let rule = gauss_legendre(npts, 0.0, 1.0)?;
    let e = 2 * n_abs as i32;
    let p = 3 * d as i32 - 1;
    let i = rule.integrate(|s| {
        let s4 = s * s * s * s;
        4.0 * s.powi(p) * (1.0 - s4).powi(e)
    });
    Ok((i, i * (n_abs as f64 + 1.0).powf(0.75 * d as f64)))
}
