//! Property tests for the exact counting layer, all validated against
//! independent trial-division oracles.

use proptest::prelude::*;

use friable_core::sieve::{
    inclusion_exclusion_interval, prime_count_interval, psi_exact, psi_interval_exact_with,
    SieveBudget, SieveStrategy,
};

fn is_smooth_naive(mut n: u64, y: u64) -> bool {
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            if d > y {
                return false;
            }
            n /= d;
        }
        d += 1;
    }
    n == 1 || n <= y
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psi_matches_naive_count(x in 1u64..3000, y in 2u64..200) {
        let budget = SieveBudget::default();
        let y = y.min(2 * x);
        let naive = (1..=x).filter(|&n| is_smooth_naive(n, y)).count() as u64;
        prop_assert_eq!(psi_exact(x, y, &budget).unwrap(), naive);
    }

    #[test]
    fn psi_monotone_in_x_and_y(x in 10u64..5000, y in 2u64..500) {
        let budget = SieveBudget::default();
        let y = y.min(2 * x - 1);
        let base = psi_exact(x, y, &budget).unwrap();
        prop_assert!(psi_exact(x + 1, y, &budget).unwrap() >= base);
        prop_assert!(psi_exact(x, y + 1, &budget).unwrap() >= base);
    }

    #[test]
    fn strategies_agree_on_random_intervals(
        x in 100u64..2_000_000,
        h in 0u64..5000,
        log_y in 1u64..21,
    ) {
        let budget = SieveBudget::default();
        let h = h.min(x);
        let y = 2u64 << log_y.min(20); // log-spread up to ~2e6
        let y = y.min(2 * x);
        let a = psi_interval_exact_with(SieveStrategy::SpfMax, x, h, y, &budget).unwrap();
        let b = psi_interval_exact_with(SieveStrategy::DivideOut, x, h, y, &budget).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn inclusion_exclusion_is_the_interval_count(
        x in 2u64..20_000,
        h in 0u64..300,
        y in 2u64..100,
    ) {
        let budget = SieveBudget::default();
        let h = h.min(x);
        let ie = inclusion_exclusion_interval(x, h, y, &budget).unwrap();
        let direct = (x + 1..=x + h).filter(|&n| is_smooth_naive(n, y)).count() as u64;
        prop_assert_eq!(ie, direct);
    }
}

#[test]
fn brun_titchmarsh_constant_stays_small() {
    // measured C in pi(x1+h1) - pi(x1) <= C h1/log h1 over a grid
    let budget = SieveBudget::default();
    let mut worst = 0.0f64;
    for &x1 in &[0.0, 100.0, 1e4, 1e5, 1e6, 1e7] {
        for &h1 in &[10.0, 100.0, 1000.0, 10_000.0] {
            let count = prime_count_interval(x1, h1, &budget).unwrap() as f64;
            let c = count * h1.ln() / h1;
            worst = worst.max(c);
        }
    }
    assert!(worst <= 4.0, "measured Brun-Titchmarsh constant {worst}");
}

#[test]
fn example_queries_against_oracle() {
    let budget = SieveBudget::default();
    // the (10, 10, 2) interval: 2-smooth numbers in (10, 20]
    let oracle: Vec<u64> = (11..=20).filter(|&n| is_smooth_naive(n, 2)).collect();
    assert_eq!(oracle, vec![16]);
    assert_eq!(
        psi_interval_exact_with(SieveStrategy::DivideOut, 10, 10, 2, &budget).unwrap(),
        1
    );
}
