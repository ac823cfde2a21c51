//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::time::Instant;

use astro_float::{BigFloat, Consts, RoundingMode};
use laguerre_hardy::hardy::{
    atom_family, atom_r_integral_report, beta_identity_check, coefficient_decay_constant, hardy_sum_from_table,
    uniform_phi_sum_scan, FamilyMember,
};
use laguerre_hardy::kernel::{kernel_closed, norm_scan, NormKind, SmoothingParam};
use laguerre_hardy::quadrature::{coefficients_up_to, gram_defect};
use laguerre_hardy::sharpness::{
    divergence_demo, inner_series_scan, trig_series_accelerated, trig_series_limit, trig_series_naive, TrigKind,
};
use laguerre_hardy::special_fn::{
    bessel_i_scaled, bessel_ratio, hermite_laguerre_dx, hermite_laguerre_fn, standard_laguerre_fn, FD_STEP,
};
use laguerre_hardy::verify::{l1_grid, run_suite, Suite, SuiteConfig};
use laguerre_hardy::{AlphaIndex, EvalPoint};
use statrs::function::beta::ln_beta;
use statrs::function::gamma::gamma;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn ratio(v: &[f64]) -> f64 {
    let max = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = v.iter().cloned().fold(f64::INFINITY, f64::min);
    max / min
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn orthonormality() -> Outcome {
    let t = Instant::now();
    let mut worst = 0.0f64;
    for a in [-0.5, 0.5, 1.0, 2.5] {
        worst = worst.max(gram_defect(a, 40).expect("gram"));
    }
    let secs = t.elapsed().as_secs_f64();
    outcome(worst < 1e-8 && secs < 30.0, format!("max |<φn,φm> − δ| = {worst:.2e}, {secs:.1}s"))
}

fn relation_and_derivative() -> Outcome {
    let grid = linspace(0.05, 6.0, 100);
    let mut rel = 0.0f64;
    for a in [-0.5, 0.5, 2.0] {
        for k in 0..=50 {
            for &u in &grid {
                let h = hermite_laguerre_fn(a, k, u).unwrap();
                let s = (2.0 * u).sqrt() * standard_laguerre_fn(a, k, u * u).unwrap();
                if h != 0.0 || s != 0.0 {
                    rel = rel.max((h - s).abs() / h.abs().max(s.abs()));
                }
            }
        }
    }
    // Relative to the local scale: near a zero of φ′ the comparison uses
    // the largest |φ′| on the grid instead of the pointwise value.
    let mut drel = 0.0f64;
    let dgrid = linspace(0.1, 8.0, 100);
    for a in [-0.5, 0.5, 2.5] {
        for k in 0..=50 {
            let d: Vec<f64> = dgrid.iter().map(|&u| hermite_laguerre_dx(a, k, u).unwrap()).collect();
            let scale = d.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for (i, &u) in dgrid.iter().enumerate() {
                let fd = (hermite_laguerre_fn(a, k, u + FD_STEP).unwrap() - hermite_laguerre_fn(a, k, u - FD_STEP).unwrap())
                    / (2.0 * FD_STEP);
                drel = drel.max((d[i] - fd).abs() / d[i].abs().max(1e-3 * scale));
            }
        }
    }
    outcome(rel < 1e-13 && drel < 1e-6, format!("relation rel err {rel:.2e}, derivative vs FD {drel:.2e}"))
}

fn bessel() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..200 {
        let z = 1e-2 * 1e5f64.powf(i as f64 / 199.0);
        // Scaled: e^{-z} I_{±1/2}(z); for z > 20 use the exponential forms directly.
        let c = (2.0 / (std::f64::consts::PI * z)).sqrt();
        let (sh, ch) = if z < 20.0 {
            ((z.sinh()) * (-z).exp(), (z.cosh()) * (-z).exp())
        } else {
            let e = (-2.0 * z).exp();
            (0.5 * (1.0 - e), 0.5 * (1.0 + e))
        };
        let p = bessel_i_scaled(0.5, z).unwrap();
        let m = bessel_i_scaled(-0.5, z).unwrap();
        worst = worst.max((p - c * sh).abs() / (c * sh)).max((m - c * ch).abs() / (c * ch));
    }
    let mut violations = 0;
    let mut points = 0;
    for a in [0.5, 1.0, 3.0] {
        for i in 0..400 {
            let z = 1e-3 * 5e4f64.powf(i as f64 / 399.0);
            let q = bessel_ratio(a, z).unwrap();
            points += 1;
            if (q - 1.0).abs() > 2.0 * a / z {
                violations += 1;
            }
        }
    }
    outcome(
        worst < 1e-12 && violations == 0,
        format!("I_±1/2 rel err {worst:.2e}; ratio bound violations {violations}/{points}"),
    )
}

/// Spectral series in multiprecision arithmetic. Far from the diagonal the
/// kernel is ~1e-203 while the terms are O(1), so the working precision must
/// cover that cancellation.
mod oracle {
    use super::*;

    pub const P: usize = 832;
    const RM: RoundingMode = RoundingMode::ToEven;

    pub struct Ctx {
        cc: Consts,
    }

    impl Ctx {
        pub fn new() -> Self {
            Ctx { cc: Consts::new().expect("constants cache") }
        }

        fn bf(&self, x: f64) -> BigFloat {
            BigFloat::from_f64(x, P)
        }

        pub fn to_f64(&mut self, x: &BigFloat) -> f64 {
            let s = x.format(astro_float::Radix::Dec, RM, &mut self.cc).expect("format");
            s.parse().expect("decimal")
        }

        /// `Γ(α+1)` for α ∈ {−1/2, 1/2, 2}.
        fn gamma1(&mut self, alpha: f64) -> BigFloat {
            let pi = self.cc.pi(P, RM);
            let sp = pi.sqrt(P, RM);
            if alpha == -0.5 {
                sp
            } else if alpha == 0.5 {
                sp.div(&self.bf(2.0), P, RM)
            } else if alpha == 2.0 {
                self.bf(2.0)
            } else {
                panic!("no exact Γ for α = {alpha}")
            }
        }

        /// Recurrence coefficients `√(k(k+α))` and `√((k+1)(k+α+1))`.
        pub fn coefficients(&self, alpha: f64, n: usize) -> Vec<(BigFloat, BigFloat)> {
            (0..=n)
                .map(|k| {
                    let kf = k as f64;
                    (
                        self.bf(kf * (kf + alpha)).sqrt(P, RM),
                        self.bf((kf + 1.0) * (kf + alpha + 1.0)).sqrt(P, RM),
                    )
                })
                .collect()
        }

        /// `φ_0..φ_n` at `x` via the normalized recurrence.
        pub fn phi(&mut self, alpha: f64, x: f64, coef: &[(BigFloat, BigFloat)]) -> Vec<BigFloat> {
            let n = coef.len() - 1;
            let bx = self.bf(x);
            let v = bx.mul(&bx, P, RM);
            let half = self.bf(0.5);
            // x^α by hand: `pow` keeps raising its working precision when
            // the result is exactly representable.
            let pw = if alpha == -0.5 {
                bx.sqrt(P, RM).reciprocal(P, RM)
            } else if alpha == 0.5 {
                bx.sqrt(P, RM)
            } else if alpha == 2.0 {
                v.clone()
            } else {
                panic!("no exact power for α = {alpha}")
            };
            let e = v.mul(&half, P, RM).neg().exp(P, RM, &mut self.cc);
            let g = self.gamma1(alpha).sqrt(P, RM);
            let l0 = pw.mul(&e, P, RM).div(&g, P, RM);
            let pref = self.bf(2.0).mul(&bx, P, RM).sqrt(P, RM);
            let mut out = Vec::with_capacity(n + 1);
            let mut prev = BigFloat::from_f64(0.0, P);
            let mut cur = l0;
            for k in 0..=n {
                out.push(pref.mul(&cur, P, RM));
                let kf = k as f64;
                let c1 = self.bf(2.0 * kf + alpha + 1.0).sub(&v, P, RM);
                let (c2, den) = &coef[k];
                let next = c1.mul(&cur, P, RM).sub(&c2.mul(&prev, P, RM), P, RM).div(den, P, RM);
                prev = cur;
                cur = next;
            }
            out
        }

        pub fn series(&mut self, r: f64, px: &[BigFloat], py: &[BigFloat], n: usize) -> f64 {
            let br = self.bf(r);
            let mut rk = self.bf(1.0);
            let mut acc = self.bf(0.0);
            for k in 0..=n {
                acc = acc.add(&rk.mul(&px[k], P, RM).mul(&py[k], P, RM), P, RM);
                rk = rk.mul(&br, P, RM);
            }
            self.to_f64(&acc)
        }
    }
}

fn kernel_equality() -> Outcome {
    let t = Instant::now();
    let grid: Vec<f64> = linspace(0.1, 5.0, 10);
    let rs = [0.1, 0.5, 0.9, 0.95];
    let mut ctx = oracle::Ctx::new();
    let mut worst = 0.0f64;
    let mut at = (0.0, 0.0, 0.0, 0.0);
    for a in [-0.5, 0.5, 2.0] {
        // |φ_k| <= 1.1, so r^N 1.21/(1-r) below 1e-14 of the smallest kernel
        // value at this r bounds the truncation.
        let mut n_for = Vec::new();
        for &rv in &rs {
            let r = SmoothingParam::new(rv).unwrap();
            let mut min_val = f64::INFINITY;
            for &x in &grid {
                for &y in &grid {
                    min_val = min_val.min(kernel_closed(a, &r, x, y).unwrap());
                }
            }
            n_for.push(((1e-14 * min_val * (1.0 - rv) / 1.21).ln() / rv.ln()).ceil() as usize);
        }
        let nmax = *n_for.iter().max().unwrap();
        let coef = ctx.coefficients(a, nmax);
        let phis: Vec<_> = grid.iter().map(|&x| ctx.phi(a, x, &coef)).collect();
        for (&rv, &n) in rs.iter().zip(&n_for) {
            let r = SmoothingParam::new(rv).unwrap();
            for (i, &x) in grid.iter().enumerate() {
                for (j, &y) in grid.iter().enumerate() {
                    let c = kernel_closed(a, &r, x, y).unwrap();
                    let s = ctx.series(rv, &phis[i], &phis[j], n);
                    let e = (c - s).abs() / s.abs();
                    if e > worst {
                        worst = e;
                        at = (a, rv, x, y);
                    }
                }
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    outcome(
        worst < 1e-8 && secs < 60.0,
        format!(
            "closed vs {}-bit series: max rel err {worst:.2e} at (α,r,x,y) = {at:?}, {secs:.1}s",
            oracle::P
        ),
    )
}

fn scaling() -> Outcome {
    let rs = [0.9, 0.99, 0.999];
    let mut lines = Vec::new();
    let mut pass = true;
    for (kind, alpha, p) in [
        (NormKind::Kernel, vec![-0.5], 0.25),
        (NormKind::Kernel, vec![0.5], 0.25),
        (NormKind::Derivative, vec![-0.5], 0.75),
        (NormKind::Derivative, vec![0.5], 0.75),
        (NormKind::ProductDerivative, vec![-0.5, 0.5], 1.0),
        (NormKind::ProductDerivative, vec![0.5, 0.5], 1.0),
    ] {
        let s = norm_scan(kind, &alpha, &rs, p).expect("scan");
        pass &= s.ratio <= 10.0;
        lines.push(format!("{}{:?}={:.3}", kind.as_str(), alpha, s.ratio));
    }
    outcome(pass, format!("max/min ratios {}", lines.join(", ")))
}

fn family() -> Vec<FamilyMember> {
    atom_family(20, 1e-4, 10.0, 42).expect("family")
}

fn atom_integral(fam: &[FamilyMember]) -> Outcome {
    let t = Instant::now();
    let mut values = Vec::new();
    let mut worst_change = 0.0f64;
    let mut finite = true;
    for m in fam {
        let r = atom_r_integral_report(&m.atom, &m.alpha).expect("integral");
        finite &= r.value.is_finite() && r.doubled.is_finite();
        worst_change = worst_change.max(r.rel_change);
        values.push(r.value);
    }
    let q = ratio(&values);
    let secs = t.elapsed().as_secs_f64();
    outcome(
        finite && q <= 10.0 && worst_change < 1e-3 && secs < 600.0,
        format!("max/min {q:.3}, worst mesh-doubling change {worst_change:.1e}, {secs:.0}s"),
    )
}

fn hardy_sums(fam: &[FamilyMember]) -> Outcome {
    let mut worst_tail = 0.0f64;
    let mut over = 0;
    let mut maxv = 0.0f64;
    let mut decay = 0.0f64;
    for m in fam {
        let n = if m.atom.dim == 1 { 2000 } else { 200 };
        let table = coefficients_up_to(&m.atom.target(), &m.alpha, n).expect("coefficients");
        let h = hardy_sum_from_table(&table, 0.75 * m.atom.dim as f64).expect("sum");
        worst_tail = worst_tail.max(h.cauchy_tail);
        if h.cauchy_tail >= 0.05 {
            over += 1;
        }
        maxv = maxv.max(h.value);
        decay = decay.max(coefficient_decay_constant(&table, m.atom.norm_l1()));
    }
    outcome(
        worst_tail < 0.05 && maxv.is_finite(),
        format!("worst Cauchy tail {worst_tail:.3} ({over} atoms ≥ 0.05); family max {maxv:.3}; decay constant {decay:.3}"),
    )
}

fn beta_identity() -> Outcome {
    let mut worst = 1.0f64;
    let mut oracle_err = 0.0f64;
    for d in [1usize, 2] {
        let a = 0.75 * d as f64;
        let target = gamma(a) * 2f64.powf(-a);
        for n in [10usize, 50, 200] {
            let (i, scaled) = beta_identity_check(n, d).unwrap();
            let exact = ln_beta(2.0 * n as f64 + 1.0, a).exp();
            oracle_err = oracle_err.max((i - exact).abs() / exact);
            let f = scaled / target;
            worst = worst.max(f.max(1.0 / f));
        }
    }
    outcome(worst <= 3.0 && oracle_err < 1e-10, format!("worst factor {worst:.3}; vs Beta oracle {oracle_err:.1e}"))
}

fn l1_uniform() -> Outcome {
    let grid = l1_grid();
    let mut lines = Vec::new();
    let mut pass = true;
    for a in [-0.5, 0.5, 2.0] {
        let s = uniform_phi_sum_scan(a, 0.25, &grid, 10_000).expect("scan");
        pass &= s.max.is_finite() && s.max_tail < 0.05;
        lines.push(format!("α={a}: max {:.3}, tail {:.4}", s.max, s.max_tail));
    }
    outcome(pass, lines.join("; "))
}

fn sharpness() -> Outcome {
    let t = Instant::now();
    let a = AlphaIndex::scalar(0.5).unwrap();
    let x = EvalPoint::new(vec![1.0]).unwrap();
    let crit = divergence_demo(&a, &x, 0.75, 100_000).unwrap();
    let sup = divergence_demo(&a, &x, 0.85, 100_000).unwrap();
    let secs = t.elapsed().as_secs_f64();
    outcome(
        crit.slope > 0.0 && crit.r_squared >= 0.9 && sup.cauchy_tail < 0.01 && secs < 300.0,
        format!(
            "β=3/4 slope {:.4} R² {:.5}; β=0.85 Cauchy tail {:.4}; {secs:.1}s",
            crit.slope, crit.r_squared, sup.cauchy_tail
        ),
    )
}

fn trig_series() -> Outcome {
    let mut ident = 0.0f64;
    for k in [2u64, 10, 1000, 10_000] {
        let n = trig_series_naive(1.0, TrigKind::Cos, k).unwrap();
        let s = trig_series_accelerated(1.0, TrigKind::Cos, k).unwrap();
        ident = ident.max((n - s).abs());
    }
    let (l4, _) = trig_series_limit(1.0, TrigKind::Cos, 10_000).unwrap();
    let (l6, _) = trig_series_limit(1.0, TrigKind::Cos, 1_000_000).unwrap();
    let naive = trig_series_naive(1.0, TrigKind::Cos, 1_000_000).unwrap();
    let stab = (l4 - l6).abs();
    let gap = (naive - l6).abs();
    outcome(
        ident < 1e-10 && stab < 1e-6 && gap < 1e-2,
        format!("identity {ident:.1e}; limit {l6:.14} stable to {stab:.1e}; naive gap {gap:.2e}"),
    )
}

fn inner_decay() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for d in [1u32, 2] {
        let s = inner_series_scan(d, &[10, 100, 1000]).unwrap();
        pass &= s.ratio <= 10.0;
        lines.push(format!("d={d}: normalized {:?} ratio {:.2}", s.normalized.iter().map(|v| format!("{v:.3e}")).collect::<Vec<_>>(), s.ratio));
    }
    outcome(pass, lines.join("; "))
}

fn determinism() -> Outcome {
    let cfg = SuiteConfig { count: Some(4), seed: 7, ..Default::default() };
    let a = run_suite(Suite::AtomIntegral, &cfg).unwrap().to_json_without_timestamp();
    let b = run_suite(Suite::AtomIntegral, &cfg).unwrap().to_json_without_timestamp();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(2).build().unwrap();
    let c = pool.install(|| run_suite(Suite::AtomIntegral, &cfg).unwrap().to_json_without_timestamp());
    let l = SuiteConfig::default();
    let d = run_suite(Suite::L1Uniform, &l).unwrap().to_json_without_timestamp();
    let e = pool.install(|| run_suite(Suite::L1Uniform, &l).unwrap().to_json_without_timestamp());
    outcome(a == b && b == c && d == e, format!("{} + {} bytes compared across 3 runs and 2 pool sizes", a.len(), d.len()))
}

fn main() {
    let fam = family();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("orthonormality", Box::new(orthonormality)),
        ("relation and derivative", Box::new(relation_and_derivative)),
        ("bessel", Box::new(bessel)),
        ("kernel branch equality", Box::new(kernel_equality)),
        ("scaling laws", Box::new(scaling)),
        ("atom integral", Box::new(|| atom_integral(&fam))),
        ("hardy sums", Box::new(|| hardy_sums(&fam))),
        ("beta identity", Box::new(beta_identity)),
        ("l1 uniform bound", Box::new(l1_uniform)),
        ("sharpness dichotomy", Box::new(sharpness)),
        ("trig series", Box::new(trig_series)),
        ("inner-series decay", Box::new(inner_decay)),
        ("determinism", Box::new(determinism)),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let id = (i + 1).to_string();
        if !filter.is_empty() && !filter.iter().any(|x| *x == id || name.contains(x.as_str())) {
            continue;
        }
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!("{} {:>2} {}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, name, o.detail);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
