//! Geometry checks for merged contours against an independently coded
//! pointwise-maximum oracle, over randomized synthetic zero configurations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use friable_core::contour::{build_gamma, lambda_floor, ZeroWithNu};
use friable_core::saddle;
use friable_core::PrimeTable;

/// Direct evaluation of the rightmost cover at height `t`, written from the
/// curve formulas alone (no segment lists).
fn sigma_oracle(
    t: f64,
    alpha: f64,
    x: f64,
    y: u64,
    eps: f64,
    zeros: &[ZeroWithNu],
) -> f64 {
    let ln_y = (y as f64).ln();
    let u = x.ln() / (y as f64).ln();
    let t0 = (u + 1.0).ln() / (eps * eps * ln_y);
    let amp = t0 * (-(1.0 - alpha) * ln_y).exp();
    let t_arc_max = amp * ((1.0 - eps) / 2.0 * ln_y).exp();
    let mut best = (1.0 + eps) / 2.0;
    if t.abs() <= t0 {
        best = best.max(alpha);
    } else if t.abs() <= t_arc_max {
        let delta = (t.abs() / amp).ln() / ln_y;
        best = best.max(1.0 - delta);
    }
    for z in zeros {
        for gc in [z.gamma, -z.gamma] {
            let d = (t - gc).abs();
            let reach_v = 10.0 * (z.nu * ln_y).exp();
            let reach_a = 10.0 * (0.5 * ln_y).exp();
            if d <= reach_v {
                best = best.max(1.0 - (1.0 - eps) * z.nu);
            } else if d <= reach_a {
                let delta = (d / 10.0).ln() / ln_y;
                best = best.max(1.0 - (1.0 - eps) * delta);
            }
        }
    }
    best
}

#[test]
fn merged_contour_matches_pointwise_oracle() {
    let table = PrimeTable::up_to(10_000);
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_817);
    let x = 1e6;
    let y = 1000u64;
    let eps = 0.05;
    let h_cap = 2e3;
    let alpha = saddle::saddle_point(x, y, 1e-10, &table).unwrap().alpha;
    let floor = lambda_floor(x, 0.05);

    for config in 0..25 {
        let n_zeros = rng.gen_range(0..12);
        let mut zeros: Vec<ZeroWithNu> = (0..n_zeros)
            .map(|_| ZeroWithNu {
                gamma: rng.gen_range(5.0..h_cap),
                nu: rng.gen_range(floor.max(0.02)..=0.5),
            })
            .collect();
        zeros.sort_by(|a, b| a.gamma.total_cmp(&b.gamma));
        let path = build_gamma(&zeros, x, y, eps, h_cap, &table).unwrap();
        path.validate(alpha.max(1.0 - (1.0 - eps) * floor)).unwrap();

        for _ in 0..2000 {
            let t = rng.gen_range(-h_cap..h_cap);
            let from_path = path.sigma_at(t).unwrap();
            let from_oracle = sigma_oracle(t, alpha, x, y, eps, &zeros);
            assert_eq!(
                from_path, from_oracle,
                "config {config}: sigma mismatch at t = {t}"
            );
        }

        // zero avoidance at every supplied ordinate
        for z in &zeros {
            let sigma = path.sigma_at(z.gamma).unwrap();
            let beta = 1.0 - z.nu;
            assert!(
                sigma >= 1.0 - (1.0 - eps) * z.nu - 1e-12,
                "cover too low over zero at {}",
                z.gamma
            );
            assert!(sigma > beta, "no clearance over zero at {}", z.gamma);
        }

        // symmetry under t -> -t
        for _ in 0..200 {
            let t = rng.gen_range(0.0..h_cap);
            let a = path.sigma_at(t).unwrap();
            let b = path.sigma_at(-t).unwrap();
            assert!((a - b).abs() <= 1e-10, "asymmetry at t = {t}");
        }
    }
}

#[test]
fn merged_contour_respects_height_cap() {
    let table = PrimeTable::up_to(10_000);
    let path = build_gamma(&[], 1e6, 1000, 0.05, 500.0, &table).unwrap();
    let (lo, hi) = path.t_range();
    assert_eq!(lo, -500.0);
    assert_eq!(hi, 500.0);
    assert!(path.sigma_at(600.0).is_none());
}

#[test]
fn rejects_unsorted_or_invalid_zeros() {
    let table = PrimeTable::up_to(10_000);
    let bad = [
        ZeroWithNu { gamma: 50.0, nu: 0.3 },
        ZeroWithNu { gamma: 20.0, nu: 0.3 },
    ];
    assert!(build_gamma(&bad, 1e6, 1000, 0.05, 1e3, &table).is_err());
    let neg = [ZeroWithNu { gamma: -5.0, nu: 0.3 }];
    assert!(build_gamma(&neg, 1e6, 1000, 0.05, 1e3, &table).is_err());
    let nu0 = [ZeroWithNu { gamma: 5.0, nu: 0.0 }];
    assert!(build_gamma(&nu0, 1e6, 1000, 0.05, 1e3, &table).is_err());
}
