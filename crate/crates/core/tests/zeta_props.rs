//! Analytic-side properties: symmetry, the triangle bound, derivative
//! consistency, and the Dirichlet-sum comparison against the logarithmic
//! derivative.

use num_complex::Complex64;
use proptest::prelude::*;

use friable_core::saddle;
use friable_core::zeta::{lambda_sum, log_deriv_zeta_smooth, log_zeta_smooth, zeta_smooth, EvalConfig};
use friable_core::PrimeTable;

fn table() -> PrimeTable {
    PrimeTable::up_to(2000)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conjugate_symmetry(sigma in 0.05f64..3.0, t in 0.0f64..50.0, y in 2u64..2000) {
        let tbl = table();
        let cfg = EvalConfig::new(y);
        let z1 = zeta_smooth(Complex64::new(sigma, t), &cfg, &tbl).unwrap();
        let z2 = zeta_smooth(Complex64::new(sigma, -t), &cfg, &tbl).unwrap();
        prop_assert!((z1.conj() - z2).norm() <= 1e-12 * z1.norm().max(1e-300));
    }

    #[test]
    fn triangle_bound(sigma in 0.1f64..2.0, t in 0.0f64..100.0, y in 2u64..2000) {
        let tbl = table();
        let cfg = EvalConfig::new(y);
        let on_axis = zeta_smooth(Complex64::new(sigma, 0.0), &cfg, &tbl).unwrap().re;
        let off = zeta_smooth(Complex64::new(sigma, t), &cfg, &tbl).unwrap().norm();
        prop_assert!(off <= on_axis * (1.0 + 1e-12), "|zeta| = {off} > {on_axis}");
    }

    #[test]
    fn log_derivative_matches_difference_quotient(
        sigma in 0.2f64..2.0,
        t in -20.0f64..20.0,
        y in 3u64..2000,
    ) {
        let tbl = table();
        let cfg = EvalConfig::new(y);
        let s = Complex64::new(sigma, t);
        let step = 1e-6;
        let up = log_zeta_smooth(s + step, &cfg, &tbl).unwrap();
        let down = log_zeta_smooth(s - step, &cfg, &tbl).unwrap();
        let numeric = (up - down) / (2.0 * step);
        let closed = -log_deriv_zeta_smooth(s, &cfg, &tbl).unwrap();
        prop_assert!(
            (numeric - closed).norm() <= 1e-5 * closed.norm().max(1e-12),
            "numeric {numeric} vs closed {closed}"
        );
    }
}

#[test]
fn lambda_sum_triangle_against_log_deriv() {
    let tbl = PrimeTable::up_to(100_000);
    for &(x, y) in &[(1e6, 1000u64), (1e5, 300), (1e8, 10_000)] {
        let alpha = saddle::saddle_point(x, y, 1e-10, &tbl).unwrap().alpha;
        let at_alpha = lambda_sum(Complex64::new(alpha, 0.0), y, &tbl).unwrap().re;
        // off-axis magnitudes never exceed the on-axis sum
        for &t in &[0.3, 1.0, 5.0, 40.0] {
            let off = lambda_sum(Complex64::new(alpha, t), y, &tbl).unwrap().norm();
            assert!(off <= at_alpha * (1.0 + 1e-12));
        }
        // the on-axis sum sits just below log x = Σ log p/(p^α − 1)
        let cfg = EvalConfig::new(y);
        let ld = log_deriv_zeta_smooth(Complex64::new(alpha, 0.0), &cfg, &tbl)
            .unwrap()
            .re;
        assert!((ld - x.ln()).abs() <= 1e-8 * x.ln());
        assert!(at_alpha <= ld + 1e-9);
        assert!(
            ld - at_alpha <= 5.0,
            "prime-power tail {} unexpectedly large",
            ld - at_alpha
        );
    }
}

#[test]
fn zeta_direct_sum_small_case() {
    // zeta(2, 5) = (1-1/4)^-1 (1-1/9)^-1 (1-1/25)^-1 against direct summation
    let tbl = table();
    let cfg = EvalConfig::new(5);
    let z = zeta_smooth(Complex64::new(2.0, 0.0), &cfg, &tbl).unwrap().re;
    let mut direct = 0.0;
    for n in 1u64..=1_000_000 {
        let mut m = n;
        for p in [2u64, 3, 5] {
            while m % p == 0 {
                m /= p;
            }
        }
        if m == 1 {
            direct += 1.0 / (n * n) as f64;
        }
    }
    assert!((z - direct).abs() < 1e-9, "{z} vs {direct}");
}
