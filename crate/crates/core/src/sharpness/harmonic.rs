use crate::sum::CompensatedSum;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Largest `k` summed term by term.
pub const HARMONIC_EXACT_MAX: usize = 1_000_000;

/// `H(k) - ln k - γ` from the asymptotic expansion. Accurate to below
/// `1e-16` for `k >= 1000`.
pub(crate) fn harmonic_remainder_asymptotic(k: f64) -> f64 {
    let k2 = 1.0 / (k * k);
    0.5 / k - k2 * (1.0 / 12.0 - k2 * (1.0 / 120.0 - k2 / 252.0))
}

/// `H(k) = Σ_{j<=k} 1/j`: compensated summation up to `10⁶`, the asymptotic
/// expansion beyond.
pub fn harmonic_number(k: u64) -> f64 {
    assert!(k >= 1, "harmonic_number needs k >= 1");
    if k as usize <= HARMONIC_EXACT_MAX {
        let mut s = CompensatedSum::new();
        for j in (1..=k).rev() {
            s.add(1.0 / j as f64);
        }
        s.value()
    } else {
        let kf = k as f64;
        kf.ln() + EULER_GAMMA + harmonic_remainder_asymptotic(kf)
    }
}

/// `r(k) = H(k) - ln k - γ` for `1 <= k`, free of the cancellation in the
/// direct difference.
pub fn harmonic_remainder(k: u64) -> f64 {
    if k >= 1000 {
        harmonic_remainder_asymptotic(k as f64)
    } else {
        harmonic_number(k) - (k as f64).ln() - EULER_GAMMA
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn small_values() {
        assert_eq!(harmonic_number(1), 1.0);
        assert_relative_eq!(harmonic_number(4), 25.0 / 12.0, max_relative = 1e-15);
    }

    #[test]
    fn branches_agree() {
        for k in [1000u64, 5000, 1_000_000] {
            let exact = harmonic_number(k);
            let asym = (k as f64).ln() + EULER_GAMMA + harmonic_remainder_asymptotic(k as f64);
            assert!((exact - asym).abs() < 1e-13, "k={k}");
        }
        assert!(harmonic_number(2_000_000) > harmonic_number(1_000_000));
    }

    #[test]
    fn remainder_is_small() {
        let r = harmonic_remainder(1_000_000);
        assert!(r > 0.0 && r <= 0.5e-6);
    }
}
