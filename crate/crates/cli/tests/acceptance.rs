//! Acceptance suite: one test per criterion, each printing a single
//! `acceptance N (<name>): PASS` / `FAIL` line. Run with
//! `cargo test --release -p friable-cli --test acceptance -- --nocapture`.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use friable_core::contour::{self, ZeroWithNu};
use friable_core::hildebrand;
use friable_core::quad::QuadConfig;
use friable_core::saddle;
use friable_core::sieve::{self, SieveBudget, SieveStrategy};
use friable_core::zeros;
use friable_core::zeta::{self, EvalConfig};
use friable_core::PrimeTable;

fn finish(n: u32, name: &str, started: Instant, failures: Vec<String>) {
    let secs = started.elapsed().as_secs_f64();
    if failures.is_empty() {
        println!("acceptance {n} ({name}): PASS [{secs:.1}s]");
    } else {
        println!("acceptance {n} ({name}): FAIL [{secs:.1}s]");
        for f in &failures {
            println!("  - {f}");
        }
        panic!("criterion {n} ({name}) failed with {} defect(s)", failures.len());
    }
}

fn check(failures: &mut Vec<String>, ok: bool, msg: impl FnOnce() -> String) {
    if !ok {
        failures.push(msg());
    }
}

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

fn zeros_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros_2000.txt")
}

#[test]
fn acceptance_1_exactness() {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    let budget = SieveBudget::default();

    // pinned values against the trial-division oracle
    for &(x, y, expect) in &[(100u64, 3u64, 20u64), (100, 5, 34), (10, 2, 4)] {
        let oracle = (1..=x).filter(|&n| is_smooth_naive(n, y)).count() as u64;
        check(&mut failures, oracle == expect, || {
            format!("oracle({x},{y}) = {oracle} != pinned {expect}")
        });
        let got = sieve::psi_exact(x, y, &budget).unwrap();
        check(&mut failures, got == expect, || {
            format!("psi_exact({x},{y}) = {got} != {expect}")
        });
    }

    // dual-sieve agreement on 200 random queries with x <= 10^7
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for i in 0..200 {
        let x = (10f64.powf(rng.gen_range(1.0..7.0))) as u64;
        let h = rng.gen_range(0..10_000u64).min(x);
        let y = (10f64.powf(rng.gen_range(0.35..7.2)) as u64).clamp(2, 2 * x);
        let a = sieve::psi_interval_exact_with(SieveStrategy::SpfMax, x, h, y, &budget).unwrap();
        let b = sieve::psi_interval_exact_with(SieveStrategy::DivideOut, x, h, y, &budget).unwrap();
        check(&mut failures, a == b, || {
            format!("query {i}: strategies disagree at x={x} h={h} y={y}: {a} vs {b}")
        });
    }

    // inclusion-exclusion identity, exhaustively over x <= 10^4
    let mut bad = 0u32;
    for y in [5u64, 10, 30] {
        for h in [10u64, 100] {
            for x in h..=10_000 {
                let ie = sieve::inclusion_exclusion_interval(x, h, y, &budget).unwrap();
                let direct = sieve::psi_interval_exact(x, h, y, &budget).unwrap();
                if ie != direct && bad < 5 {
                    failures.push(format!(
                        "inclusion-exclusion {ie} != interval {direct} at x={x} h={h} y={y}"
                    ));
                    bad += 1;
                }
            }
        }
    }
    finish(1, "exactness suite", t0, failures);
}

#[test]
fn acceptance_2_saddle() {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    let budget = SieveBudget::default();
    let table = PrimeTable::up_to(100_000_000);

    // 50-point grid: 5 decades of x, 10 log-spaced y per x with y <= x
    let xs: [f64; 5] = [1e4, 1e5, 1e6, 1e7, 1e8];
    let mut grid: Vec<(f64, u64)> = Vec::new();
    for &x in &xs {
        for k in 0..10 {
            let y = (30.0 * (x / 30.0).powf(k as f64 / 9.0)).round() as u64;
            grid.push((x, y));
        }
    }
    assert_eq!(grid.len(), 50);

    // exact counts per x in one cumulative pass each
    let mut psi = std::collections::HashMap::new();
    for &x in &xs {
        let mut ys: Vec<u64> = grid
            .iter()
            .filter(|g| g.0 == x)
            .map(|g| g.1)
            .collect();
        ys.sort_unstable();
        ys.dedup();
        let counts = sieve::psi_exact_multi(&[x as u64], &ys, &budget).unwrap();
        for (yi, &y) in ys.iter().enumerate() {
            psi.insert((x as u64, y), counts[0][yi]);
        }
    }

    for &(x, y) in &grid {
        let r = saddle::saddle_point(x, y, 1e-10, &table).unwrap();
        check(&mut failures, r.residual <= 1e-10 * x.ln(), || {
            format!("residual {} too large at x={x} y={y}", r.residual)
        });
        // Rankin inequality against the exact count
        let count = psi[&(x as u64, y)] as f64;
        check(&mut failures, r.rankin_value >= count, || {
            format!("Rankin bound {} < psi {count} at x={x} y={y}", r.rankin_value)
        });
        // minimizer perturbation property
        let cfg = EvalConfig::new(y);
        for &d in &[-1e-2, -1e-3, 1e-3, 1e-2] {
            let s = r.alpha + d;
            if s <= 0.0 {
                continue;
            }
            let lz = zeta::log_zeta_smooth(Complex64::new(s, 0.0), &cfg, &table)
                .unwrap()
                .re;
            let perturbed = s * x.ln() + lz;
            check(
                &mut failures,
                perturbed >= r.rankin_log + (1.0f64 - 1e-9).ln(),
                || format!("perturbation {d} beats the saddle at x={x} y={y}"),
            );
        }
        // approximate-formula O(1) on the admissible sub-grid
        let yf = y as f64;
        if yf >= x.ln().powi(3) && x.ln() < yf && yf <= x {
            let u = x.ln() / yf.ln();
            let gap = ((1.0 - r.alpha) * yf.ln() - (u * (u + 1.0).ln()).ln()).abs();
            check(&mut failures, gap <= 4.0, || {
                format!("alpha approximation O(1) gap {gap} > 4 at x={x} y={y}")
            });
        }
    }

    // hybrid solver against the independent bisection oracle
    for &(x, y) in &[(1e6, 1000u64), (1e4, 97), (1e8, 31623)] {
        let hybrid = saddle::saddle_point(x, y, 1e-12, &table).unwrap().alpha;
        let bisect = saddle::saddle_point_bisect(x, y, 60, &table).unwrap();
        check(&mut failures, (hybrid - bisect).abs() <= 1e-9, || {
            format!("solver mismatch {hybrid} vs {bisect} at x={x} y={y}")
        });
    }

    // Euler-constant sanity at 10^8
    let s = sieve::prime_log_weight_sum(100_000_000, &budget).unwrap();
    let diff = (s - 1e8f64.ln() + 0.5772).abs();
    check(&mut failures, diff <= 0.02, || {
        format!("Euler-constant gap {diff} > 0.02")
    });

    finish(2, "saddle suite", t0, failures);
}

#[test]
fn acceptance_3_zeta() {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    let table = PrimeTable::up_to(1000);
    let cfg = EvalConfig::new(1000);
    let alpha = saddle::saddle_point(1e6, 1000, 1e-10, &table).unwrap().alpha;
    let base = zeta::zeta_smooth(Complex64::new(alpha, 0.0), &cfg, &table)
        .unwrap()
        .re;

    // triangle bound and conjugate symmetry over a t grid
    for i in 0..=80 {
        let t = 0.25 * i as f64;
        let z = zeta::zeta_smooth(Complex64::new(alpha, t), &cfg, &table).unwrap();
        check(&mut failures, z.norm() <= base * (1.0 + 1e-12), || {
            format!("triangle bound violated at t={t}: {} > {base}", z.norm())
        });
        let zc = zeta::zeta_smooth(Complex64::new(alpha, -t), &cfg, &table).unwrap();
        check(
            &mut failures,
            (z.conj() - zc).norm() <= 1e-12 * z.norm(),
            || format!("conjugate symmetry violated at t={t}"),
        );
    }

    // derivative consistency: central difference of log zeta vs closed form
    for &(sigma, t) in &[(0.8, 0.0), (1.1, 3.0), (0.6, -11.0)] {
        let s = Complex64::new(sigma, t);
        let step = 1e-6;
        let up = zeta::log_zeta_smooth(s + step, &cfg, &table).unwrap();
        let down = zeta::log_zeta_smooth(s - step, &cfg, &table).unwrap();
        let numeric = (up - down) / (2.0 * step);
        let closed = -zeta::log_deriv_zeta_smooth(s, &cfg, &table).unwrap();
        check(
            &mut failures,
            (numeric - closed).norm() <= 1e-5 * closed.norm(),
            || format!("derivative consistency fails at s={s}"),
        );
    }

    // direct-sum equivalence for y <= 50 with a certified Rankin tail bound
    const N_CAP: u64 = 100_000_000;
    for &y in &[30u64, 47] {
        let primes: Vec<u64> = table.primes_leq(y).unwrap().to_vec();
        for &sigma in &[0.8, 1.0, 1.5] {
            // enumerate all y-smooth n <= N_CAP depth-first
            let mut sum = 0.0f64;
            let mut comp = 0.0f64;
            let mut stack = vec![(1u64, 0usize)];
            while let Some((n, i)) = stack.pop() {
                if i == primes.len() {
                    let v = (n as f64).powf(-sigma);
                    let t = sum + v;
                    comp += if sum.abs() >= v.abs() {
                        (sum - t) + v
                    } else {
                        (v - t) + sum
                    };
                    sum = t;
                    continue;
                }
                let mut m = n;
                loop {
                    stack.push((m, i + 1));
                    match m.checked_mul(primes[i]) {
                        Some(next) if next <= N_CAP => m = next,
                        _ => break,
                    }
                }
            }
            let direct = sum + comp;
            let cfg_y = EvalConfig::new(y);
            let full = zeta::zeta_smooth(Complex64::new(sigma, 0.0), &cfg_y, &table)
                .unwrap()
                .re;
            // tail <= N^(beta - sigma) zeta(beta, y) for every 0 < beta < sigma
            let mut tail_bound = f64::INFINITY;
            let mut beta = 0.05;
            while beta < sigma - 1e-9 {
                let zb = zeta::zeta_smooth(Complex64::new(beta, 0.0), &cfg_y, &table)
                    .unwrap()
                    .re;
                tail_bound = tail_bound.min((N_CAP as f64).powf(beta - sigma) * zb);
                beta += 0.05;
            }
            let tail = full - direct;
            check(&mut failures, tail >= -1e-9 * full, || {
                format!("direct sum exceeds product at sigma={sigma} y={y}")
            });
            check(&mut failures, tail <= tail_bound, || {
                format!("tail {tail} above certified bound {tail_bound} at sigma={sigma} y={y}")
            });
        }
    }

    // qualitative decay of the ratio profile
    let ratios = zeta::ratio_decay_profile(1e6, 1000, &[1.0], &table).unwrap();
    check(&mut failures, ratios[0] < 0.99, || {
        format!("no decay at t=1: ratio {}", ratios[0])
    });

    finish(3, "zeta suite", t0, failures);
}

#[test]
fn acceptance_4_contour() {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    let budget = SieveBudget::default();
    let table = PrimeTable::up_to(10_000);
    let (x, y, eps, h_cap) = (1e6, 1000u64, 0.05, 2000.0);
    let alpha = saddle::saddle_point(x, y, 1e-10, &table).unwrap().alpha;
    let floor = contour::lambda_floor(x, 0.05);
    let sigma_cap = alpha.max(1.0 - (1.0 - eps) * floor);

    // 100 random synthetic zero configurations
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut heights_checked = 0u32;
    for config in 0..100 {
        let n_zeros = rng.gen_range(0..15);
        let mut zs: Vec<ZeroWithNu> = (0..n_zeros)
            .map(|_| ZeroWithNu {
                gamma: rng.gen_range(5.0..h_cap),
                nu: rng.gen_range(floor.max(0.02)..=0.5),
            })
            .collect();
        zs.sort_by(|a, b| a.gamma.total_cmp(&b.gamma));
        let path = match contour::build_gamma(&zs, x, y, eps, h_cap, &table) {
            Ok(p) => p,
            Err(e) => {
                failures.push(format!("config {config}: build failed: {e}"));
                continue;
            }
        };
        if let Err(e) = path.validate(sigma_cap) {
            failures.push(format!("config {config}: {e}"));
        }
        for z in &zs {
            let sigma = path.sigma_at(z.gamma).unwrap();
            if !(sigma > 1.0 - z.nu) {
                failures.push(format!(
                    "config {config}: no clearance over zero gamma={}",
                    z.gamma
                ));
            }
        }
        // pointwise-max oracle agreement, 100 heights per configuration
        for _ in 0..100 {
            let t = rng.gen_range(-h_cap..h_cap);
            let from_path = path.sigma_at(t).unwrap();
            let oracle = sigma_pointwise_oracle(t, alpha, x, y, eps, &zs);
            if from_path != oracle {
                failures.push(format!(
                    "config {config}: sigma({t}) = {from_path} oracle {oracle}"
                ));
            }
            heights_checked += 1;
        }
    }
    check(&mut failures, heights_checked == 10_000, || {
        format!("checked {heights_checked} heights, wanted 10000")
    });

    // Perron consistency at the two pinned tuples (frozen factor 20)
    let q = QuadConfig::default();
    for &(px, ph, py, cap) in &[(1e5, 1e3, 100u64, 1e4), (1e6, 1e4, 1000, 1e5)] {
        let v = contour::perron_count(px, ph, py, cap, &q, &table).unwrap();
        let exact = sieve::psi_interval_exact(px as u64, ph as u64, py, &budget).unwrap() as f64;
        let bound = 20.0 * px * px.ln() / cap;
        check(&mut failures, (v - exact).abs() <= bound, || {
            format!(
                "perron error {} above 20*x*log(x)/H = {bound} at x={px} y={py}",
                (v - exact).abs()
            )
        });
    }

    finish(4, "contour suite", t0, failures);
}

/// Independent pointwise-maximum oracle (duplicated here on purpose: it must
/// not share code with the segment-list builder).
fn sigma_pointwise_oracle(
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
        best = best.max(1.0 - (t.abs() / amp).ln() / ln_y);
    }
    for z in zeros {
        for gc in [z.gamma, -z.gamma] {
            let d = (t - gc).abs();
            if d <= 10.0 * (z.nu * ln_y).exp() {
                best = best.max(1.0 - (1.0 - eps) * z.nu);
            } else if d <= 10.0 * (0.5 * ln_y).exp() {
                best = best.max(1.0 - (1.0 - eps) * ((d / 10.0).ln() / ln_y));
            }
        }
    }
    best
}

#[test]
fn acceptance_5_main_term() {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    let budget = SieveBudget::default();
    let q = QuadConfig::default();

    // near-axis integral against alpha * Psi at x = 10^8, y = 10^3
    {
        let table = PrimeTable::up_to(1000);
        let (x, y) = (1e8, 1000u64);
        let v = contour::near_axis_integral(x, y, &q, &table).unwrap();
        let alpha = saddle::saddle_point(x, y, 1e-10, &table).unwrap().alpha;
        let psi = sieve::psi_exact(100_000_000, y, &budget).unwrap() as f64;
        let ratio = v / (alpha * psi);
        let u = x.ln() / (y as f64).ln();
        let slack = 5.0 / u + 5.0 * (y as f64).ln() / y as f64;
        check(
            &mut failures,
            ratio >= 1.0 - slack && ratio <= 1.0 + slack,
            || format!("near-axis ratio {ratio} outside 1 +/- {slack}"),
        );
    }

    // f(x, y) * h against the exact short count at x = 10^6
    {
        let table = PrimeTable::up_to(1000);
        let r = contour::f_theta(1e6, 1000, 0.05, &q, &table).unwrap();
        let est = r.value * 1e4;
        let exact = sieve::psi_interval_exact(1_000_000, 10_000, 1000, &budget).unwrap() as f64;
        let rel = ((est - exact) / exact).abs();
        check(&mut failures, rel <= 0.25, || {
            format!("f_theta*h = {est} misses exact {exact} by {rel} > 25%")
        });
        check(
            &mut failures,
            r.imag_residual.abs() <= 1e-8 * r.value.abs(),
            || format!("imaginary residual {} too large", r.imag_residual),
        );

        // quadrature refinement stability: halving the panel width
        let q2 = QuadConfig {
            panel_max_width_t: 0.25 / 1e6f64.ln(),
            ..q
        };
        let r2 = contour::f_theta(1e6, 1000, 0.05, &q2, &table).unwrap();
        let drift = ((r2.value - r.value) / r.value).abs();
        check(&mut failures, drift <= 1e-6, || {
            format!("refinement drift {drift} > 1e-6")
        });
    }

    finish(5, "main-term suite", t0, failures);
}

#[test]
fn acceptance_6_theorem_desk_check() {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    let budget = SieveBudget::default();
    let xs: [u64; 3] = [10_000_000, 100_000_000, 1_000_000_000];
    let ys: [u64; 3] = [100, 1000, 10_000];
    let longs = sieve::psi_exact_multi(&xs, &ys, &budget).unwrap();

    let mut max_constant = [0.0f64; 3];
    println!("  x, y, h, short_density, long_density, ratio, implied_constant");
    for (xi, &x) in xs.iter().enumerate() {
        for (yi, &y) in ys.iter().enumerate() {
            let h = (x as f64).powf(0.7).ceil() as u64;
            let short = sieve::psi_interval_exact(x, h, y, &budget).unwrap();
            let short_density = short as f64 / h as f64;
            let long_density = longs[xi][yi] as f64 / x as f64;
            let ratio = short_density / long_density;
            let u = (x as f64).ln() / (y as f64).ln();
            let implied = (ratio - 1.0).abs() * (y as f64).ln() / (u + 1.0).ln();
            check(&mut failures, implied.is_finite(), || {
                format!("implied constant not finite at x={x} y={y}")
            });
            max_constant[xi] = max_constant[xi].max(implied);
            println!(
                "  {x}, {y}, {h}, {short_density:.6}, {long_density:.6}, {ratio:.6}, {implied:.4}"
            );
        }
    }
    println!(
        "  grid maxima: x=10^7 -> {:.4}, x=10^8 -> {:.4}, x=10^9 -> {:.4}",
        max_constant[0], max_constant[1], max_constant[2]
    );
    check(
        &mut failures,
        max_constant[2] <= max_constant[0],
        || {
            format!(
                "implied-constant grid maximum increased from {:.4} (x=10^7) to {:.4} (x=10^9)",
                max_constant[0], max_constant[2]
            )
        },
    );

    finish(6, "theorem desk check", t0, failures);
}

#[test]
fn acceptance_7_hildebrand() {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    let budget = SieveBudget::default();

    // dual-method agreement to 1e-12 for x <= 10^5
    for &(x, y) in &[
        (1e3, 10u64),
        (1e4, 100),
        (1e4, 11),
        (5e4, 316),
        (1e5, 100),
        (1e5, 1000),
        (99_991.0, 47),
    ] {
        let a = hildebrand::g_estimate(x, y, &budget).unwrap().value;
        let b = hildebrand::g_estimate_raw(x, y, &budget).unwrap().value;
        check(&mut failures, (a - b).abs() <= 1e-12, || {
            format!("g methods disagree at x={x} y={y}: {a} vs {b}")
        });
        check(&mut failures, a > 0.0 && a <= 1.0, || {
            format!("g = {a} outside (0, 1] at x={x} y={y}")
        });
    }

    // trivial regimes
    let g1 = hildebrand::g_estimate(1000.0, 1001, &budget).unwrap().value;
    check(&mut failures, g1 == 1.0, || format!("y > x gave g = {g1}"));
    let g2 = hildebrand::g_estimate(1000.0, 700, &budget).unwrap().value;
    let expect = 1.0 - 1.0 / 1000f64.ln();
    check(&mut failures, g2 == expect, || {
        format!("x/2 < y <= x gave g = {g2}, want {expect}")
    });

    // large-y short-interval estimate within 5% at x = 10^8
    let est = hildebrand::short_interval_estimate_large_y(1e8, 1e6, 10_000_000, &budget).unwrap();
    let exact = sieve::psi_interval_exact(100_000_000, 1_000_000, 10_000_000, &budget).unwrap();
    let rel = ((est - exact as f64) / exact as f64).abs();
    check(&mut failures, rel <= 0.05, || {
        format!("large-y estimate {est} misses exact {exact} by {rel} > 5%")
    });

    // boundary example: identity exact at 10^6, density gap within 50% at 10^8
    let small = hildebrand::boundary_example(1_000_000, &budget).unwrap();
    check(&mut failures, small.identity_h1 && small.identity_h2, || {
        format!("decomposition identity failed at x=10^6: {small:?}")
    });
    check(&mut failures, small.primes_half_h2 == 0, || {
        format!("third sum not empty in the h2 case: {small:?}")
    });
    let big = hildebrand::boundary_example(100_000_000, &budget).unwrap();
    check(&mut failures, big.identity_h1 && big.identity_h2, || {
        format!("decomposition identity failed at x=10^8")
    });
    let measured = big.density_h2 - big.density_h1;
    let rel_gap = ((measured - big.predicted_gap) / big.predicted_gap).abs();
    check(&mut failures, rel_gap <= 0.5, || {
        format!(
            "density gap {measured} vs predicted {} off by {rel_gap} > 50%",
            big.predicted_gap
        )
    });

    finish(7, "hildebrand suite", t0, failures);
}

#[test]
fn acceptance_8_explicit_formula() {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    let budget = SieveBudget::default();
    let z = zeros::load_zeros(&zeros_path(), 2000).unwrap();
    check(&mut failures, z.count() >= 2000, || {
        format!("dataset holds only {} zeros", z.count())
    });
    check(&mut failures, z.count_to(100.0) == 29, || {
        format!("N(100) = {} != 29", z.count_to(100.0))
    });

    // psi via the explicit formula at x = 10^4 with all 2000 zeros
    let t_max = z.max_ordinate();
    let explicit = zeros::chebyshev_psi_explicit(1e4, t_max, &z).unwrap();
    let exact = sieve::lambda_exact_sum(1e4, &budget).unwrap();
    check(&mut failures, (explicit - exact).abs() <= 10.0, || {
        format!("psi gap {} > 10 at x=10^4", (explicit - exact).abs())
    });

    // RMS error strictly decreases over three T-doublings
    let mut rms = Vec::new();
    for t_cut in [300.0, 600.0, 1200.0, 2400.0] {
        let mut sq = 0.0;
        for k in 1..=10u64 {
            let x = (k * 1000) as f64;
            let e = zeros::chebyshev_psi_explicit(x, t_cut, &z).unwrap()
                - sieve::lambda_exact_sum(x, &budget).unwrap();
            sq += e * e;
        }
        rms.push((sq / 10.0).sqrt());
    }
    for w in rms.windows(2) {
        check(&mut failures, w[1] < w[0], || {
            format!("RMS not strictly decreasing: {rms:?}")
        });
    }

    // primes in (10^6, 10^6 + 10^4] within 3%
    let est = zeros::prime_interval_explicit(1e6, 1e4, t_max, &z).unwrap();
    let count = sieve::prime_count_interval(1e6, 1e4, &budget).unwrap() as f64;
    let rel = ((est - count) / count).abs();
    check(&mut failures, rel <= 0.03, || {
        format!("explicit prime count {est} misses {count} by {rel} > 3%")
    });

    finish(8, "explicit-formula suite", t0, failures);
}

#[test]
fn acceptance_9_determinism() {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    let dir = std::env::temp_dir().join(format!("friable_det_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let grid = dir.join("grid.csv");
    std::fs::write(&grid, "100000,100,3163\n1000000,1000,10000\n").unwrap();
    let zp = zeros_path();

    let runs: Vec<(&str, Vec<String>)> = vec![
        ("count", vec!["--grid".into(), grid.display().to_string()]),
        ("saddle", vec!["--x".into(), "1000000".into(), "--y".into(), "1000".into()]),
        (
            "perron",
            vec![
                "--x".into(),
                "10000".into(),
                "--y".into(),
                "100".into(),
                "--h".into(),
                "100".into(),
                "--H".into(),
                "1000".into(),
            ],
        ),
        (
            "ftheta",
            vec![
                "--x".into(),
                "100000".into(),
                "--y".into(),
                "100".into(),
                "--h".into(),
                "1000".into(),
            ],
        ),
        (
            "hildebrand",
            vec![
                "--x".into(),
                "10000".into(),
                "--y".into(),
                "100".into(),
                "--h".into(),
                "100".into(),
            ],
        ),
        ("boundary-example", vec!["--x".into(), "100000".into()]),
        (
            "explicit-psi",
            vec![
                "--x".into(),
                "10000".into(),
                "--zeros".into(),
                zp.display().to_string(),
            ],
        ),
        (
            "decay-profile",
            vec!["--x".into(), "1000000".into(), "--y".into(), "1000".into()],
        ),
        (
            "theorem-main",
            vec!["--grid".into(), grid.display().to_string()],
        ),
        (
            "export-contour",
            vec![
                "--x".into(),
                "1000000".into(),
                "--y".into(),
                "1000".into(),
                "--samples".into(),
                "256".into(),
            ],
        ),
    ];

    for (sub, extra) in &runs {
        let mut outputs = Vec::new();
        for workers in ["1", "8"] {
            let out = dir.join(format!("{sub}_{workers}.csv"));
            let poly = dir.join(format!("{sub}_{workers}_poly.csv"));
            let mut cmd = Command::new(env!("CARGO_BIN_EXE_friable"));
            cmd.arg(sub)
                .args(extra)
                .args(["--workers", workers])
                .args(["--output", &out.display().to_string()]);
            if *sub == "export-contour" {
                cmd.args(["--export-path", &poly.display().to_string()]);
            }
            let status = cmd.status().unwrap();
            if !status.success() {
                failures.push(format!("{sub} --workers {workers} exited {status}"));
                continue;
            }
            let mut bytes = std::fs::read(&out).unwrap();
            if *sub == "export-contour" {
                bytes.extend(std::fs::read(&poly).unwrap());
            }
            outputs.push(bytes);
        }
        if outputs.len() == 2 && outputs[0] != outputs[1] {
            failures.push(format!("{sub}: workers 1 vs 8 reports differ"));
        }
    }
    std::fs::remove_dir_all(&dir).ok();

    finish(9, "determinism", t0, failures);
}
