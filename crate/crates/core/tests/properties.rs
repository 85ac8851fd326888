use num_complex::Complex64;
use proptest::prelude::*;
use sturmian_parity::parity::{parity_counts, parity_sieve};
use sturmian_parity::series::{accumulate, dirichlet_continued, dirichlet_truncated};
use sturmian_parity::word::{Decimal, Letter, QuadraticPreset, Slope, WordSpec};
use sturmian_parity::SieveConfig;

fn arb_word() -> impl Strategy<Value = WordSpec> {
    let mechanical = (0..4usize, 0u128..1000, any::<bool>()).prop_map(|(p, rho, b)| {
        WordSpec::mechanical(
            Slope::Quadratic(QuadraticPreset::ALL[p]),
            Decimal::new(rho, 3).unwrap(),
            if b { Letter::B } else { Letter::A },
        )
        .unwrap()
    });
    let base = prop_oneof![Just(WordSpec::Fibonacci), Just(WordSpec::Constant(Letter::B)), mechanical];
    (base, proptest::collection::vec(1u64..300, 0..5)).prop_map(|(w, flips)| {
        if flips.is_empty() {
            w
        } else {
            WordSpec::perturbed(w, flips).unwrap()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn stream_from_matches_prefix(spec in arb_word(), start in 1u64..5000, len in 1usize..200) {
        let prefix = spec.prefix(start + len as u64 - 1).unwrap();
        let tail: Vec<Letter> = spec.stream_from(start).unwrap().take(len).map(Result::unwrap).collect();
        prop_assert_eq!(&prefix[(start - 1) as usize..], &tail[..]);
    }

    #[test]
    fn sieve_matches_enumeration(spec in arb_word(), x in 1u64..70_000, probes in proptest::collection::vec(0f64..1.0, 8)) {
        let table = parity_sieve(&spec, x, &SieveConfig::with_threads(3)).unwrap();
        for p in probes {
            let n = 1 + (p * (x - 1) as f64) as u64;
            prop_assert_eq!(table.record(n), parity_counts(&spec, n).unwrap());
        }
    }

    /// `sum_{n <= x} D(n)` counts the b positions j with floor(x / j) odd.
    #[test]
    fn sum_d_counts_odd_quotients(spec in arb_word(), x in 1u64..50_000) {
        let bits = spec.prefix_bits(x).unwrap();
        let oracle = (1..=x).filter(|&j| bits.is_b(j) && (x / j) % 2 == 1).count() as i64;
        let profile = accumulate(&spec, x, &[x], &SieveConfig::with_threads(2)).unwrap();
        prop_assert_eq!(profile.points[0].sum_d, oracle);
    }

    #[test]
    fn evaluators_agree_right_of_one(spec in arb_word(), sigma in 1.5f64..3.0, t in -20f64..20.0) {
        let s = Complex64::new(sigma, t);
        let a = dirichlet_truncated(&spec, s, 1e-5).unwrap();
        let b = dirichlet_continued(&spec, s, 50_000).unwrap();
        prop_assert!((a.value - b.value).norm() <= a.error_bound + b.error_bound + 1e-10);
    }
}
