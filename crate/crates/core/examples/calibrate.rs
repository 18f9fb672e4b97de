// Scratch calibration runs for acceptance tolerances (not shipped logic).
use friable_core::contour;
use friable_core::hildebrand;
use friable_core::quad::QuadConfig;
use friable_core::saddle;
use friable_core::sieve::{self, SieveBudget};
use friable_core::zeros;
use friable_core::PrimeTable;

fn main() {
    let which = std::env::args().nth(1).unwrap_or_default();
    let budget = SieveBudget::default();
    let q = QuadConfig::default();
    match which.as_str() {
        "ftheta" => {
            let table = PrimeTable::up_to(1000);
            let t0 = std::time::Instant::now();
            let r = contour::f_theta(1e6, 1000, 0.05, &q, &table).unwrap();
            let exact = sieve::psi_interval_exact(1_000_000, 10_000, 1000, &budget).unwrap();
            let est = r.value * 1e4;
            println!(
                "f_theta={} imag={} est={est} exact={exact} rel={} elapsed={:?}",
                r.value,
                r.imag_residual,
                (est - exact as f64) / exact as f64,
                t0.elapsed()
            );
            // refinement stability
            let q2 = QuadConfig {
                panel_max_width_t: 0.25 / 1e6f64.ln(),
                ..q
            };
            let r2 = contour::f_theta(1e6, 1000, 0.05, &q2, &table).unwrap();
            println!(
                "refined={} reldiff={}",
                r2.value,
                ((r2.value - r.value) / r.value).abs()
            );
        }
        "nearaxis" => {
            let table = PrimeTable::up_to(1000);
            let t0 = std::time::Instant::now();
            let v = contour::near_axis_integral(1e8, 1000, &q, &table).unwrap();
            let alpha = saddle::saddle_point(1e8, 1000, 1e-10, &table).unwrap().alpha;
            let psi = sieve::psi_exact(100_000_000, 1000, &budget).unwrap();
            let u = 1e8f64.ln() / 1000f64.ln();
            let tol = 5.0 / u + 5.0 * 1000f64.ln() / 1000.0;
            println!(
                "near_axis={v} alpha={alpha} psi={psi} ratio={} tol_band=({},{}) elapsed={:?}",
                v / (alpha * psi as f64),
                1.0 - tol,
                1.0 + tol,
                t0.elapsed()
            );
        }
        "euler" => {
            let t0 = std::time::Instant::now();
            let s = sieve::prime_log_weight_sum(100_000_000, &budget).unwrap();
            println!(
                "sum={s} gap={} vs -gamma=-0.5772 diff={} elapsed={:?}",
                s - 1e8f64.ln(),
                (s - 1e8f64.ln() + 0.5772).abs(),
                t0.elapsed()
            );
        }
        "alphagrid" => {
            let table = PrimeTable::up_to(100_000_000);
            let mut worst: f64 = 0.0;
            let mut checked = 0;
            for &x in &[1e4f64, 1e5, 1e6, 1e7, 1e8] {
                for k in 0..10 {
                    let y = (30.0 * (x / 30.0).powf(k as f64 / 9.0)).round() as u64;
                    let r = saddle::saddle_point(x, y, 1e-10, &table).unwrap();
                    let yf = y as f64;
                    if yf >= x.ln().powi(3) && x.ln() < yf && yf <= x {
                        let u = x.ln() / yf.ln();
                        let gap = ((1.0 - r.alpha) * yf.ln() - (u * (u + 1.0).ln()).ln()).abs();
                        worst = worst.max(gap);
                        checked += 1;
                        if gap > 2.5 {
                            println!("x={x} y={y} gap={gap}");
                        }
                    }
                }
            }
            println!("worst O(1) gap on {checked} grid points = {worst}");
        }
        "decay" => {
            let table = PrimeTable::up_to(1000);
            let r = friable_core::zeta::ratio_decay_profile(1e6, 1000, &[1.0], &table).unwrap();
            println!("ratio(t=1) = {}", r[0]);
        }
        "explicit" => {
            let z = zeros::load_zeros(std::path::Path::new("data/zeros_2000.txt"), 2000).unwrap();
            let t_max = z.max_ordinate();
            let psi_e = zeros::chebyshev_psi_explicit(1e4, t_max, &z).unwrap();
            let psi_x = sieve::lambda_exact_sum(1e4, &budget).unwrap();
            println!("psi_explicit(1e4)={psi_e} exact={psi_x} diff={}", (psi_e - psi_x).abs());
            let pie = zeros::prime_interval_explicit(1e6, 1e4, t_max, &z).unwrap();
            let pix = sieve::prime_count_interval(1e6, 1e4, &budget).unwrap();
            println!(
                "pi_explicit(1e6,1e4)={pie} exact={pix} rel={}",
                (pie - pix as f64).abs() / pix as f64
            );
            // RMS over x grid for T doublings
            for t in [300.0, 600.0, 1200.0, 2400.0] {
                let mut sq = 0.0;
                for k in 1..=10u64 {
                    let x = (k * 1000) as f64;
                    let e = zeros::chebyshev_psi_explicit(x, t, &z).unwrap()
                        - sieve::lambda_exact_sum(x, &budget).unwrap();
                    sq += e * e;
                }
                println!("T={t} rms={}", (sq / 10.0).sqrt());
            }
        }
        "hild" => {
            let t0 = std::time::Instant::now();
            let g = hildebrand::g_estimate(1e8, 10_000_000, &budget).unwrap();
            let est = 1e6 * g.value;
            let exact = sieve::psi_interval_exact(100_000_000, 1_000_000, 10_000_000, &budget).unwrap();
            println!(
                "g={} est={est} exact={exact} rel={} elapsed={:?}",
                g.value,
                (est - exact as f64) / exact as f64,
                t0.elapsed()
            );
        }
        "boundary" => {
            let t0 = std::time::Instant::now();
            let r = hildebrand::boundary_example(100_000_000, &budget).unwrap();
            let measured = r.density_h2 - r.density_h1;
            println!(
                "{r:?}\nmeasured_gap={measured} predicted={} rel={} elapsed={:?}",
                r.predicted_gap,
                (measured - r.predicted_gap).abs() / r.predicted_gap,
                t0.elapsed()
            );
        }
        "bigpass" => {
            let t0 = std::time::Instant::now();
            let counts = sieve::psi_exact_multi(
                &[10_000_000, 100_000_000, 1_000_000_000],
                &[100, 1000, 10000],
                &budget,
            )
            .unwrap();
            println!("{counts:?} elapsed={:?}", t0.elapsed());
        }
        other => {
            eprintln!("unknown calibration: {other}");
        }
    }
}
