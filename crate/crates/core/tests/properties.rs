use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use ruehrkit::collatz_bound::{g_step, orbit, tail_sum, GenCollatzConfig, TailSumQuery, Termination};
use ruehrkit::exact_math::{rat, Rational};
use ruehrkit::identities::comtet1_sides;

/// A valid configuration: coprime (mult, div) and one arbitrary
/// representative per residue class.
fn config() -> impl Strategy<Value = GenCollatzConfig> {
    (2u64..=7, 1u64..=20)
        .prop_filter("coprime", |(d, n)| d.gcd(n) == 1)
        .prop_flat_map(|(d, n)| {
            prop::collection::vec(-3i64..=3, d as usize).prop_map(move |shifts| {
                let residues = shifts
                    .iter()
                    .enumerate()
                    .map(|(class, s)| class as i64 + s * d as i64)
                    .collect();
                GenCollatzConfig::new(n, d, residues).expect("valid by construction")
            })
        })
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #[test]
    fn g_step_divisibility_holds(cfg in config(), ell in 1u64..=1_000_000) {
        let next = g_step(&BigInt::from(ell), &cfg);
        prop_assert!(next.is_ok());
    }

    #[test]
    fn comtet1_fuzzed(n in 1u64..=60, k_frac in 0.0f64..1.0, a in small_rational(), b in small_rational()) {
        let k = ((n as f64) * k_frac) as u64 % n;
        prop_assert!(comtet1_sides(n, k, &a, &b).unwrap().is_equal());
    }

    #[test]
    fn tail_sum_monotone_in_eps(k in 1u64..80, d in 2u64..6, a in 1i64..50, b in 1i64..50) {
        prop_assume!(a != b);
        let (lo, hi) = (a.min(b), a.max(b));
        let t_lo = tail_sum(&TailSumQuery::new(k, d, rat(lo, 50)).unwrap());
        let t_hi = tail_sum(&TailSumQuery::new(k, d, rat(hi, 50)).unwrap());
        prop_assert!(t_hi <= t_lo);
    }
}

#[test]
fn classical_orbits_reach_one_two() {
    let cfg = GenCollatzConfig::classical();
    let target = [BigInt::from(1), BigInt::from(2)];
    for ell in 1..=10_000u64 {
        let o = orbit(&BigInt::from(ell), &cfg, 10_000).unwrap();
        assert_eq!(o.terminated, Termination::CycleFound, "ℓ={ell}");
        let mut cycle = o.cycle.unwrap();
        cycle.sort();
        assert_eq!(cycle, target, "ℓ={ell}");
    }
}
