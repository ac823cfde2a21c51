use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{CellFunction, Target};
use crate::special_fn::AlphaIndex;

/// Cells per axis of the inscribed partition of a disk.
pub const DISK_RESOLUTION: usize = 32;

/// A mean-zero, piecewise-constant function supported in `B ∩ ℝ₊^d` with
/// `sup |a| = |B|⁻¹`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Atom {
    pub dim: usize,
    pub center: Vec<f64>,
    pub radius: f64,
    /// Lebesgue measure of the full ball.
    pub measure: f64,
    pub seed: u64,
    pub cells: CellFunction,
}

/// Serialised form of an atom. Round-trips through [`Atom::from_record`],
/// which rebuilds the cells from `(dim, center, radius, seed)` and checks
/// they match.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomRecord {
    pub dim: usize,
    pub center: Vec<f64>,
    pub radius: f64,
    pub measure: f64,
    pub seed: u64,
    pub edges: Vec<Vec<f64>>,
    pub values: Vec<f64>,
}

fn ball_measure(d: usize, radius: f64) -> f64 {
    match d {
        1 => 2.0 * radius,
        2 => PI * radius * radius,
        _ => {
            // π^{d/2} / Γ(d/2 + 1) ρ^d
            let lg = crate::special_fn::log_gamma(0.5 * d as f64 + 1.0).unwrap_or(f64::NAN);
            (0.5 * d as f64 * PI.ln() - lg).exp() * radius.powi(d as i32)
        }
    }
}

fn uniform_edges(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mut e: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
    e[n] = hi;
    e
}

/// Assign `+m`/`-m` to the signed cells so that the smaller group carries
/// `|B|⁻¹` and the larger group is scaled for exact mean zero.
fn balance(signs: &[i8], volumes: &[f64], measure: f64) -> Result<Vec<f64>> {
    let plus: f64 = volumes.iter().zip(signs).filter(|(_, &s)| s > 0).map(|(v, _)| v).sum();
    let minus: f64 = volumes.iter().zip(signs).filter(|(_, &s)| s < 0).map(|(v, _)| v).sum();
    if plus == 0.0 || minus == 0.0 {
        return Err(Error::Atom("profile needs cells of both signs".into()));
    }
    let top = 1.0 / measure;
    let (vp, vm) = if plus <= minus { (top, top * plus / minus) } else { (top * minus / plus, top) };
    Ok(signs.iter().map(|&s| if s > 0 { vp } else if s < 0 { -vm } else { 0.0 }).collect())
}

impl Atom {
    pub fn target(&self) -> Target {
        Target::Cells(self.cells.clone())
    }

    pub fn sup(&self) -> f64 {
        self.cells.sup()
    }

    pub fn integral(&self) -> f64 {
        self.cells.integral()
    }

    pub fn norm_l2(&self) -> f64 {
        self.cells.norm_sq().sqrt()
    }

    pub fn norm_l1(&self) -> f64 {
        self.cells.norm_l1()
    }

    /// Smallest cell width over all axes.
    pub fn min_cell_width(&self) -> f64 {
        (0..self.dim)
            .flat_map(|i| self.cells.edges(i).windows(2).map(|w| w[1] - w[0]).collect::<Vec<_>>())
            .fold(f64::INFINITY, f64::min)
    }

    /// `sup |a| <= |B|⁻¹`, `|∫ a| <= tol` and support inside `B ∩ ℝ₊^d`.
    pub fn check_invariants(&self, tol: f64) -> bool {
        let sup_ok = self.sup() <= 1.0 / self.measure * (1.0 + 1e-15);
        let mean_ok = self.integral().abs() <= tol;
        let support_ok = self.support_in_ball();
        sup_ok && mean_ok && support_ok
    }

    fn support_in_ball(&self) -> bool {
        let shape = self.cells.shape();
        let mut idx = vec![0usize; self.dim];
        for &v in self.cells.values() {
            if v != 0.0 {
                // Every corner of a nonzero cell lies within the closed ball
                // and in the closed positive orthant.
                for corner in 0..(1usize << self.dim) {
                    let mut r2 = 0.0;
                    for ax in 0..self.dim {
                        let e = self.cells.edges(ax);
                        let x = e[idx[ax] + ((corner >> ax) & 1)];
                        if x < 0.0 {
                            return false;
                        }
                        r2 += (x - self.center[ax]).powi(2);
                    }
                    if r2 > self.radius * self.radius * (1.0 + 1e-12) {
                        return false;
                    }
                }
            }
            for ax in (0..self.dim).rev() {
                idx[ax] += 1;
                if idx[ax] < shape[ax] {
                    break;
                }
                idx[ax] = 0;
            }
        }
        true
    }

    pub fn record(&self) -> AtomRecord {
        AtomRecord {
            dim: self.dim,
            center: self.center.clone(),
            radius: self.radius,
            measure: self.measure,
            seed: self.seed,
            edges: (0..self.dim).map(|i| self.cells.edges(i).to_vec()).collect(),
            values: self.cells.values().to_vec(),
        }
    }

    pub fn from_record(rec: &AtomRecord) -> Result<Self> {
        let atom = make_atom(rec.dim, &rec.center, rec.radius, rec.seed)?;
        let cells = CellFunction::new(rec.edges.clone(), rec.values.clone())?;
        if cells != atom.cells {
            return Err(Error::Atom("record cells do not match the seeded construction".into()));
        }
        Ok(atom)
    }
}

/// Build an atom from the parametric family.
///
/// d = 1, seed 0: the canonical two-cell atom `|B|⁻¹(𝟙_{(c-ρ,c)} - 𝟙_{(c,c+ρ)})`.
/// d = 1, other seeds: 2 to 8 equal cells with random signs.
/// d = 2: the cells of a 32 × 32 grid on the bounding square that lie inside
/// the disk, signed by a half-plane through the center at a seeded angle.
/// Everything is clipped to the positive orthant.
pub fn make_atom(d: usize, center: &[f64], radius: f64, seed: u64) -> Result<Atom> {
    if center.len() != d {
        return Err(Error::DimensionMismatch { expected: d, got: center.len() });
    }
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::Atom(format!("radius must be positive, got {radius}")));
    }
    if center.iter().any(|&c| !(c > 0.0) || !c.is_finite()) {
        return Err(Error::Atom(format!("center {center:?} is not in the open positive orthant")));
    }
    let measure = ball_measure(d, radius);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = match d {
        1 => {
            let c = center[0];
            let lo = (c - radius).max(0.0);
            let hi = c + radius;
            let (edges, signs) = if seed == 0 {
                (vec![lo, c, hi], vec![1i8, -1])
            } else {
                let n = rng.gen_range(2..=8usize);
                let mut signs: Vec<i8> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
                if signs.iter().all(|&s| s == signs[0]) {
                    signs[n - 1] = -signs[0];
                }
                (uniform_edges(lo, hi, n), signs)
            };
            let vols: Vec<f64> = edges.windows(2).map(|w| w[1] - w[0]).collect();
            CellFunction::new(vec![edges], balance(&signs, &vols, measure)?)?
        }
        2 => {
            let theta = if seed == 0 { 0.0 } else { rng.gen_range(0.0..2.0 * PI) };
            let (ct, st) = (theta.cos(), theta.sin());
            let n = DISK_RESOLUTION;
            let edges: Vec<Vec<f64>> =
                center.iter().map(|&c| uniform_edges((c - radius).max(0.0), c + radius, n)).collect();
            let mut signs = Vec::with_capacity(n * n);
            let mut vols = Vec::with_capacity(n * n);
            let r2 = radius * radius * (1.0 - 1e-12);
            for i in 0..n {
                for j in 0..n {
                    let (x0, x1) = (edges[0][i], edges[0][i + 1]);
                    let (y0, y1) = (edges[1][j], edges[1][j + 1]);
                    let inside = [(x0, y0), (x0, y1), (x1, y0), (x1, y1)]
                        .iter()
                        .all(|&(x, y)| (x - center[0]).powi(2) + (y - center[1]).powi(2) <= r2);
                    let mx = 0.5 * (x0 + x1) - center[0];
                    let my = 0.5 * (y0 + y1) - center[1];
                    let side = ct * mx + st * my;
                    signs.push(if !inside || side == 0.0 { 0 } else if side > 0.0 { 1 } else { -1 });
                    vols.push((x1 - x0) * (y1 - y0));
                }
            }
            CellFunction::new(edges, balance(&signs, &vols, measure)?)?
        }
        _ => return Err(Error::Atom(format!("atoms are implemented for d <= 2, got {d}"))),
    };
    Ok(Atom { dim: d, center: center.to_vec(), radius, measure, seed, cells })
}

/// Radius with `|B| = measure` in dimension `d`.
pub fn radius_for_measure(d: usize, measure: f64) -> f64 {
    match d {
        1 => 0.5 * measure,
        _ => (measure / ball_measure(d, 1.0)).powf(1.0 / d as f64),
    }
}

/// One entry of a seeded atom family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyMember {
    pub atom: Atom,
    pub alpha: AlphaIndex,
}

/// Default order per dimension: `1/2` for d = 1, `(-1/2, 1/2)` for d = 2.
pub fn family_alpha(d: usize) -> AlphaIndex {
    match d {
        1 => AlphaIndex::scalar(0.5).expect("valid"),
        _ => {
            let mut v = vec![0.5; d];
            v[0] = -0.5;
            AlphaIndex::new(v).expect("valid")
        }
    }
}

/// `count` atoms with `|B|` log-spaced over `[measure_lo, measure_hi]`,
/// dimensions alternating 1, 2, centers uniform in `[0.5, 3]^d`.
pub fn atom_family(count: usize, measure_lo: f64, measure_hi: f64, seed: u64) -> Result<Vec<FamilyMember>> {
    if count == 0 || !(measure_lo > 0.0) || !(measure_hi >= measure_lo) {
        return Err(Error::Config("atom family needs count >= 1 and 0 < lo <= hi".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let t = if count == 1 { 0.0 } else { i as f64 / (count - 1) as f64 };
        let measure = measure_lo * (measure_hi / measure_lo).powf(t);
        let d = 1 + i % 2;
        let center: Vec<f64> = (0..d).map(|_| rng.gen_range(0.5..3.0)).collect();
        let profile_seed = rng.gen_range(1..u32::MAX as u64);
        let atom = make_atom(d, &center, radius_for_measure(d, measure), profile_seed)?;
        out.push(FamilyMember { atom, alpha: family_alpha(d) });
    }
    Ok(out)
}
