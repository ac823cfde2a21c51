//! `∫_{v0}^∞ g(v) cos v dv` and `∫ g(v) sin v dv` for smooth, slowly
//! decaying amplitudes `g`.

use std::f64::consts::PI;

use crate::quadrature::gauss_legendre;
use crate::sum::CompensatedSum;

const NPTS: usize = 16;
const FULL_PANELS: usize = 64;
const AVERAGING: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Wave {
    Cos,
    Sin,
}

impl Wave {
    fn eval(self, v: f64) -> f64 {
        match self {
            Wave::Cos => v.cos(),
            Wave::Sin => v.sin(),
        }
    }

    /// First zero of the wave strictly above `v`.
    fn next_zero(self, v: f64) -> f64 {
        let off = match self {
            Wave::Cos => 0.5 * PI,
            Wave::Sin => 0.0,
        };
        let j = ((v - off) / PI).floor() + 1.0;
        let z = off + j * PI;
        if z > v {
            z
        } else {
            z + PI
        }
    }
}

fn panel<G: Fn(f64) -> f64>(g: &G, wave: Wave, a: f64, b: f64) -> f64 {
    let rule = gauss_legendre(NPTS, a, b).expect("valid panel");
    rule.integrate(|v| g(v) * wave.eval(v))
}

/// `∫_a^b g(v) wave(v) dv` on panels between consecutive zeros.
pub(crate) fn zero_aligned<G: Fn(f64) -> f64>(g: &G, wave: Wave, a: f64, b: f64) -> f64 {
    let mut acc = CompensatedSum::new();
    let mut lo = a;
    while lo < b {
        let hi = wave.next_zero(lo).min(b);
        if hi > lo {
            acc.add(panel(g, wave, lo, hi));
        }
        lo = hi;
    }
    acc.value()
}

/// `(∫_{v0}^∞ g(v) wave(v) dv, error indicator)`. Panel integrals between
/// zeros form an alternating series; its partial sums are accelerated by
/// repeated pairwise averaging, and the indicator is the change made by the
/// last averaging level.
pub(crate) fn tail<G: Fn(f64) -> f64>(g: &G, wave: Wave, v0: f64) -> (f64, f64) {
    let first = wave.next_zero(v0);
    let mut head = panel(g, wave, v0, first);
    let mut partial = Vec::with_capacity(FULL_PANELS + 1);
    let mut acc = CompensatedSum::new();
    acc.add(head);
    partial.push(acc.value());
    let mut lo = first;
    for _ in 0..FULL_PANELS {
        let hi = lo + PI;
        acc.add(panel(g, wave, lo, hi));
        partial.push(acc.value());
        lo = hi;
    }
    let mut seq = partial;
    let mut err = f64::INFINITY;
    for _ in 0..AVERAGING.min(seq.len() - 1) {
        let next: Vec<f64> = seq.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        err = (next[next.len() - 1] - seq[seq.len() - 1]).abs();
        seq = next;
    }
    head = seq[seq.len() - 1];
    (head, err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sine_integral() {
        // ∫_0^∞ sin v / v dv = π/2, with the head on [1e-300, ...] regular.
        let g = |v: f64| 1.0 / v;
        let head = gauss_legendre(32, 0.0, 1.0).unwrap().integrate(|v| v.sin() / v);
        let (t, err) = tail(&g, Wave::Sin, 1.0);
        assert!((head + t - 0.5 * PI).abs() < 1e-13, "{}", head + t - 0.5 * PI);
        assert!(err < 1e-12);
    }

    #[test]
    fn cosine_integral_tail() {
        // -Ci(10) = 0.0454564330044554 (negated cosine integral).
        let (t, _) = tail(&|v: f64| 1.0 / v, Wave::Cos, 10.0);
        assert!((t + (-0.045_456_433_004_455_4)).abs() < 1e-13, "{t}");
    }

    #[test]
    fn zero_aligned_matches_closed_form() {
        // ∫_0^{20} v cos v dv = 20 sin 20 + cos 20 - 1.
        let v = zero_aligned(&|v: f64| v, Wave::Cos, 0.0, 20.0);
        let e = 20.0 * 20f64.sin() + 20f64.cos() - 1.0;
        assert!((v - e).abs() < 1e-12);
    }
}
