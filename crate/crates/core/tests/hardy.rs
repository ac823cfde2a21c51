use laguerre_hardy::hardy::{coefficient_decay_constant, family_alpha, hardy_sum, make_atom, Atom, AtomRecord};
use laguerre_hardy::quadrature::coefficients_up_to;
use laguerre_hardy::special_fn::hermite_laguerre_sweep;
use proptest::prelude::*;

fn atom_strategy() -> impl Strategy<Value = Atom> {
    (1usize..=2, 0.2f64..5.0, 0.2f64..5.0, 0.02f64..1.5, 0u64..1000)
        .prop_map(|(d, c0, c1, rho, seed)| make_atom(d, &[c0, c1][..d], rho, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn atoms_satisfy_their_invariants(atom in atom_strategy()) {
        prop_assert!(atom.check_invariants(1e-12));
        prop_assert!((atom.sup() * atom.measure - 1.0).abs() < 1e-12);
        prop_assert!(atom.norm_l1() <= 1.0 + 1e-12);
    }

    #[test]
    fn record_round_trips(atom in atom_strategy()) {
        let rec = atom.record();
        let back: AtomRecord = serde_json::from_str(&serde_json::to_string(&rec).unwrap()).unwrap();
        prop_assert_eq!(&back, &rec);
        prop_assert_eq!(Atom::from_record(&back).unwrap(), atom);
    }

    #[test]
    fn tampered_record_is_rejected(atom in atom_strategy(), i in any::<prop::sample::Index>()) {
        let mut rec = atom.record();
        let j = i.index(rec.values.len());
        rec.values[j] += 1.0;
        prop_assert!(Atom::from_record(&rec).is_err());
    }
}

#[test]
fn hardy_sum_decreases_in_beta() {
    for seed in [0u64, 3, 11] {
        let atom = make_atom(1, &[2.0], 0.3, seed).unwrap();
        let alpha = family_alpha(1);
        let sums: Vec<f64> =
            [0.6, 0.75, 1.0, 1.5].iter().map(|&b| hardy_sum(&atom.target(), &alpha, b, 200).unwrap().value).collect();
        assert!(sums.windows(2).all(|w| w[1] < w[0]), "seed {seed}: {sums:?}");
        let rep = hardy_sum(&atom.target(), &alpha, 0.75, 200).unwrap();
        assert!(rep.partial_sums.windows(2).all(|w| w[1] >= w[0]));
        assert_eq!(*rep.partial_sums.last().unwrap(), rep.value);
    }
}

#[test]
fn coefficients_obey_the_sup_norm_bound() {
    // |c_n| <= ‖a‖₁ sup|φ_n|, and sup|φ_n| <= C (n+1)^{-1/12} with C read off a grid.
    let nmax = 120;
    let alpha = family_alpha(1);
    let a0 = alpha.get(0);
    let mut sup = vec![0.0f64; nmax + 1];
    for i in 1..=8000 {
        for (k, v) in hermite_laguerre_sweep(a0, i as f64 * 0.005, nmax).unwrap().iter().enumerate() {
            sup[k] = sup[k].max(v.abs());
        }
    }
    let c = sup.iter().enumerate().map(|(k, s)| s * (k as f64 + 1.0).powf(1.0 / 12.0)).fold(0.0, f64::max);
    for seed in [0u64, 1, 2, 5] {
        let atom = make_atom(1, &[3.0], 0.4, seed).unwrap();
        let table = coefficients_up_to(&atom.target(), &alpha, nmax).unwrap();
        let decay = coefficient_decay_constant(&table, atom.norm_l1());
        assert!(decay <= c * 1.01, "seed {seed}: {decay} > {c}");
        assert!(table.bessel_ok(1e-9));
    }
}
