//! The experiment implementations behind each subcommand. Every experiment
//! resolves its input rows (single flags or a grid file), computes in input
//! order, and emits a fixed column schema.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::time::Instant;

use friable_core::contour::{self, ZeroWithNu};
use friable_core::hildebrand;
use friable_core::quad::QuadConfig;
use friable_core::saddle::{self, UParam};
use friable_core::sieve::{self, SieveBudget, SieveStrategy};
use friable_core::zeros as zz;
use friable_core::zeta;
use friable_core::{Error, PrimeTable, Result};

use crate::cache::CountCache;
use crate::config::{parse_grid, Experiment, ExperimentConfig};
use crate::report::{cell_f, cell_rel, cell_u, EstimateReport};

/// Largest `y` a prime table will be built for.
const TABLE_Y_CAP: u64 = 20_000_000;
/// Dual-method `g` evaluation is reported up to this `x`.
const G_RAW_CAP: f64 = 1e5;

/// Execute the configured experiment and return its report.
pub fn run(config: &ExperimentConfig) -> Result<EstimateReport> {
    config.validate()?;
    let budget = SieveBudget::default();
    let rows = resolve_rows(config)?;
    let mut cache = match &config.cache {
        Some(p) => CountCache::load(p)?,
        None => CountCache::ephemeral(),
    };
    let report = match config.experiment {
        Experiment::Count => run_count(config, &rows, &mut cache, &budget)?,
        Experiment::Saddle => run_saddle(config, &rows, &budget)?,
        Experiment::TheoremMain => verify_theorem_main_inner(&rows, config, &mut cache, &budget)?,
        Experiment::Perron => run_perron(config, &rows, &mut cache, &budget)?,
        Experiment::Ftheta => run_ftheta(config, &rows, &mut cache, &budget)?,
        Experiment::Hildebrand => run_hildebrand(config, &rows, &mut cache, &budget)?,
        Experiment::BoundaryExample => run_boundary(config, &rows, &budget)?,
        Experiment::ExplicitPsi => run_explicit_psi(config, &rows, &budget)?,
        Experiment::DecayProfile => run_decay_profile(config, &rows)?,
        Experiment::ExportContour => run_export_contour(config)?,
    };
    cache.save()?;
    Ok(report)
}

/// The short-versus-long density comparison over a grid of `(x, y, h)`
/// triples; rows with `h = 0` take `h = ceil(x^theta)`.
pub fn verify_theorem_main(
    grid: &[(u64, u64, u64)],
    config: &ExperimentConfig,
) -> Result<EstimateReport> {
    let budget = SieveBudget::default();
    let mut cache = match &config.cache {
        Some(p) => CountCache::load(p)?,
        None => CountCache::ephemeral(),
    };
    let report = verify_theorem_main_inner(grid, config, &mut cache, &budget)?;
    cache.save()?;
    Ok(report)
}

fn resolve_rows(config: &ExperimentConfig) -> Result<Vec<(u64, u64, u64)>> {
    if let Some(path) = &config.grid {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Dataset(format!("cannot read grid {}: {e}", path.display())))?;
        return parse_grid(&text, &path.display().to_string());
    }
    Ok(vec![(
        config.x.unwrap_or(0),
        config.y.unwrap_or(2),
        config.h.unwrap_or(0),
    )])
}

fn table_for_rows(rows: &[(u64, u64, u64)], floor: u64) -> Result<PrimeTable> {
    let max_y = rows.iter().map(|r| r.1).max().unwrap_or(2).max(floor);
    if max_y > TABLE_Y_CAP {
        return Err(Error::Budget(format!(
            "y = {max_y} exceeds the prime-table cap {TABLE_Y_CAP}"
        )));
    }
    Ok(PrimeTable::up_to(max_y.max(3)))
}

fn timed<T>(timing: bool, f: impl FnOnce() -> Result<T>) -> Result<(T, Option<f64>)> {
    if timing {
        let t0 = Instant::now();
        let v = f()?;
        Ok((v, Some(t0.elapsed().as_secs_f64() * 1e3)))
    } else {
        Ok((f()?, None))
    }
}

/// Exact count for `(x, y, h)` through the cache; h = 0 means the long range.
fn exact_count(
    x: u64,
    y: u64,
    h: u64,
    cache: &mut CountCache,
    budget: &SieveBudget,
) -> Result<(u64, &'static str)> {
    if let Some(hit) = cache.get(x, y, h) {
        return Ok(hit);
    }
    let v = if h == 0 {
        sieve::psi_exact(x, y, budget)?
    } else {
        sieve::psi_interval_exact(x, h, y, budget)?
    };
    let prov = SieveStrategy::DivideOut.provenance_id();
    cache.insert(x, y, h, v, prov);
    Ok((v, prov))
}

fn run_count(
    config: &ExperimentConfig,
    rows: &[(u64, u64, u64)],
    cache: &mut CountCache,
    budget: &SieveBudget,
) -> Result<EstimateReport> {
    let mut report = EstimateReport::new(
        "count",
        vec!["x", "y", "h", "exact", "provenance"],
        config.seed,
    );
    for &(x, y, h) in rows {
        let ((v, prov), ms) = timed(config.timing, || exact_count(x, y, h, cache, budget))?;
        report.push_row(
            vec![cell_u(x), cell_u(y), cell_u(h), cell_u(v), prov.to_string()],
            ms,
        );
    }
    Ok(report)
}

fn run_saddle(
    config: &ExperimentConfig,
    rows: &[(u64, u64, u64)],
    budget: &SieveBudget,
) -> Result<EstimateReport> {
    let _ = budget;
    let table = table_for_rows(rows, 2)?;
    let mut report = EstimateReport::new(
        "saddle",
        vec![
            "x",
            "y",
            "u",
            "alpha",
            "alpha_approx",
            "residual",
            "iterations",
            "rankin_log",
            "rankin_value",
        ],
        config.seed,
    );
    for &(x, y, _) in rows {
        let xf = x as f64;
        let (r, ms) = timed(config.timing, || saddle::saddle_point(xf, y, 1e-10, &table))?;
        let approx = saddle::alpha_approx(xf, y)
            .map(cell_f)
            .unwrap_or_default();
        report.push_row(
            vec![
                cell_u(x),
                cell_u(y),
                cell_f(UParam::new(xf, y).0),
                cell_f(r.alpha),
                approx,
                cell_f(r.residual),
                cell_u(r.iterations as u64),
                cell_f(r.rankin_log),
                cell_f(r.rankin_value),
            ],
            ms,
        );
    }
    Ok(report)
}

fn verify_theorem_main_inner(
    rows: &[(u64, u64, u64)],
    config: &ExperimentConfig,
    cache: &mut CountCache,
    budget: &SieveBudget,
) -> Result<EstimateReport> {
    // resolve h = 0 rows through theta
    let resolved: Vec<(u64, u64, u64)> = rows
        .iter()
        .map(|&(x, y, h)| {
            let h = if h == 0 {
                (x as f64).powf(config.theta).ceil() as u64
            } else {
                h
            };
            (x, y, h)
        })
        .collect();

    // group long counts by x so each x needs one cumulative pass
    let mut by_x: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &(x, y, _) in &resolved {
        if cache.get(x, y, 0).is_none() {
            let ys = by_x.entry(x).or_default();
            if !ys.contains(&y) {
                ys.push(y);
            }
        }
    }
    for (&x, ys) in by_x.iter_mut() {
        ys.sort_unstable();
        let counts = sieve::psi_exact_multi(&[x], ys, budget)?;
        for (yi, &y) in ys.iter().enumerate() {
            cache.insert(x, y, 0, counts[0][yi], SieveStrategy::SpfMax.provenance_id());
        }
    }

    let mut report = EstimateReport::new(
        "theorem-main",
        vec![
            "x",
            "y",
            "h",
            "short_count",
            "long_count",
            "short_density",
            "long_density",
            "ratio",
            "bound",
            "implied_constant",
            "provenance",
        ],
        config.seed,
    );
    for &(x, y, h) in &resolved {
        let (cells, ms) = timed(config.timing, || {
            let (long, prov_long) = exact_count(x, y, 0, cache, budget)?;
            let (short, prov_short) = exact_count(x, y, h, cache, budget)?;
            let short_density = short as f64 / h as f64;
            let long_density = long as f64 / x as f64;
            let ratio = short_density / long_density;
            let u = UParam::new(x as f64, y).0;
            let bound = (u + 1.0).ln() / (y as f64).ln();
            let implied = (ratio - 1.0).abs() / bound;
            let prov = if prov_long == prov_short {
                prov_long.to_string()
            } else {
                format!("{prov_long}+{prov_short}")
            };
            Ok(vec![
                cell_u(x),
                cell_u(y),
                cell_u(h),
                cell_u(short),
                cell_u(long),
                cell_f(short_density),
                cell_f(long_density),
                cell_f(ratio),
                cell_f(bound),
                cell_f(implied),
                prov,
            ])
        })?;
        report.push_row(cells, ms);
    }
    Ok(report)
}

fn run_perron(
    config: &ExperimentConfig,
    rows: &[(u64, u64, u64)],
    cache: &mut CountCache,
    budget: &SieveBudget,
) -> Result<EstimateReport> {
    let table = table_for_rows(rows, 2)?;
    let q = QuadConfig::default();
    let mut report = EstimateReport::new(
        "perron",
        vec![
            "x",
            "y",
            "h",
            "H",
            "perron",
            "exact",
            "abs_error",
            "error_bound",
            "provenance",
        ],
        config.seed,
    );
    for &(x, y, h) in rows {
        let (cells, ms) = timed(config.timing, || {
            let xf = x as f64;
            let v = contour::perron_count(xf, h as f64, y, config.big_h, &q, &table)?;
            let (exact, prov) = exact_count(x, y, h, cache, budget)?;
            let bound = 20.0 * xf * xf.ln() / config.big_h;
            Ok(vec![
                cell_u(x),
                cell_u(y),
                cell_u(h),
                cell_f(config.big_h),
                cell_f(v),
                cell_u(exact),
                cell_f((v - exact as f64).abs()),
                cell_f(bound),
                prov.to_string(),
            ])
        })?;
        report.push_row(cells, ms);
    }
    Ok(report)
}

fn run_ftheta(
    config: &ExperimentConfig,
    rows: &[(u64, u64, u64)],
    cache: &mut CountCache,
    budget: &SieveBudget,
) -> Result<EstimateReport> {
    let table = table_for_rows(rows, 2)?;
    let q = QuadConfig::default();
    let mut report = EstimateReport::new(
        "ftheta",
        vec![
            "x",
            "y",
            "eps",
            "h",
            "ftheta",
            "imag_residual",
            "estimate",
            "exact",
            "rel_error",
            "provenance",
        ],
        config.seed,
    );
    for &(x, y, h) in rows {
        let (cells, ms) = timed(config.timing, || {
            let r = contour::f_theta(x as f64, y, config.eps, &q, &table)?;
            let (est, exact, rel, prov) = if h > 0 {
                let est = r.value * h as f64;
                let (exact, prov) = exact_count(x, y, h, cache, budget)?;
                (
                    cell_f(est),
                    cell_u(exact),
                    cell_rel(est, Some(exact as f64)),
                    prov,
                )
            } else {
                (String::new(), String::new(), String::new(), "")
            };
            Ok(vec![
                cell_u(x),
                cell_u(y),
                cell_f(config.eps),
                cell_u(h),
                cell_f(r.value),
                cell_f(r.imag_residual),
                est,
                exact,
                rel,
                prov.to_string(),
            ])
        })?;
        report.push_row(cells, ms);
    }
    Ok(report)
}

fn run_hildebrand(
    config: &ExperimentConfig,
    rows: &[(u64, u64, u64)],
    cache: &mut CountCache,
    budget: &SieveBudget,
) -> Result<EstimateReport> {
    let mut report = EstimateReport::new(
        "hildebrand",
        vec![
            "x", "y", "h", "g", "g_raw", "terms", "estimate", "exact", "rel_error",
            "provenance",
        ],
        config.seed,
    );
    for &(x, y, h) in rows {
        let (cells, ms) = timed(config.timing, || {
            let xf = x as f64;
            let g = hildebrand::g_estimate(xf, y, budget)?;
            let g_raw = if xf <= G_RAW_CAP {
                cell_f(hildebrand::g_estimate_raw(xf, y, budget)?.value)
            } else {
                String::new()
            };
            let (est, exact, rel, prov) = if h > 0 {
                let est = h as f64 * g.value;
                let (exact, prov) = exact_count(x, y, h, cache, budget)?;
                (
                    cell_f(est),
                    cell_u(exact),
                    cell_rel(est, Some(exact as f64)),
                    prov,
                )
            } else {
                (String::new(), String::new(), String::new(), "")
            };
            Ok(vec![
                cell_u(x),
                cell_u(y),
                cell_u(h),
                cell_f(g.value),
                g_raw,
                cell_u(g.terms_enumerated),
                est,
                exact,
                rel,
                prov.to_string(),
            ])
        })?;
        report.push_row(cells, ms);
    }
    Ok(report)
}

fn run_boundary(
    config: &ExperimentConfig,
    rows: &[(u64, u64, u64)],
    budget: &SieveBudget,
) -> Result<EstimateReport> {
    let mut report = EstimateReport::new(
        "boundary-example",
        vec![
            "x",
            "y",
            "h1",
            "h2",
            "smooth_h1",
            "smooth_h2",
            "primes_large_h1",
            "primes_half_h1",
            "primes_large_h2",
            "primes_half_h2",
            "identity_h1",
            "identity_h2",
            "density_h1",
            "density_h2",
            "measured_gap",
            "predicted_gap",
        ],
        config.seed,
    );
    for &(x, _, _) in rows {
        let (r, ms) = timed(config.timing, || hildebrand::boundary_example(x, budget))?;
        report.push_row(
            vec![
                cell_u(r.x),
                cell_u(r.y),
                cell_u(r.h1),
                cell_u(r.h2),
                cell_u(r.smooth_h1),
                cell_u(r.smooth_h2),
                cell_u(r.primes_large_h1),
                cell_u(r.primes_half_h1),
                cell_u(r.primes_large_h2),
                cell_u(r.primes_half_h2),
                r.identity_h1.to_string(),
                r.identity_h2.to_string(),
                cell_f(r.density_h1),
                cell_f(r.density_h2),
                cell_f(r.density_h2 - r.density_h1),
                cell_f(r.predicted_gap),
            ],
            ms,
        );
    }
    Ok(report)
}

fn run_explicit_psi(
    config: &ExperimentConfig,
    rows: &[(u64, u64, u64)],
    budget: &SieveBudget,
) -> Result<EstimateReport> {
    let path = config
        .zeros
        .as_ref()
        .ok_or_else(|| Error::Domain("missing required field \"zeros\"".into()))?;
    let zeros = zz::load_zeros(path, config.max_zeros)?;
    let t_max = zeros.max_ordinate();
    let mut report = EstimateReport::new(
        "explicit-psi",
        vec![
            "x",
            "h",
            "T",
            "zeros_used",
            "explicit",
            "exact",
            "abs_error",
            "rel_error",
            "ppower_bound",
            "provenance",
        ],
        config.seed,
    );
    for &(x, _, h) in rows {
        let (cells, ms) = timed(config.timing, || {
            let xf = x as f64;
            let hf = h as f64;
            let (explicit, exact, prov) = if h == 0 {
                (
                    zz::chebyshev_psi_explicit(xf, t_max, &zeros)?,
                    sieve::lambda_exact_sum(xf, budget)?,
                    "sieve:lambda-sum",
                )
            } else {
                (
                    zz::prime_interval_explicit(xf, hf, t_max, &zeros)?,
                    sieve::prime_count_interval(xf, hf, budget)? as f64,
                    "sieve:interval-primes",
                )
            };
            Ok(vec![
                cell_u(x),
                cell_u(h),
                cell_f(t_max),
                cell_u(zeros.count() as u64),
                cell_f(explicit),
                cell_f(exact),
                cell_f((explicit - exact).abs()),
                cell_rel(explicit, Some(exact)),
                cell_f(zz::prime_power_correction_bound(xf)),
                prov.to_string(),
            ])
        })?;
        report.push_row(cells, ms);
    }
    Ok(report)
}

fn run_decay_profile(
    config: &ExperimentConfig,
    rows: &[(u64, u64, u64)],
) -> Result<EstimateReport> {
    let table = table_for_rows(rows, 2)?;
    let mut report = EstimateReport::new(
        "decay-profile",
        vec!["x", "y", "alpha", "t", "ratio", "implied_c0"],
        config.seed,
    );
    for &(x, y, _) in rows {
        let xf = x as f64;
        let alpha = saddle::saddle_point(xf, y, 1e-10, &table)?.alpha;
        let u = UParam::new(xf, y).0;
        let ratios = zeta::ratio_decay_profile(xf, y, &config.t_grid, &table)?;
        for (&t, &ratio) in config.t_grid.iter().zip(&ratios) {
            let c0 = zeta::implied_c0(ratio, t, alpha, u)
                .map(cell_f)
                .unwrap_or_default();
            report.push_row(
                vec![
                    cell_u(x),
                    cell_u(y),
                    cell_f(alpha),
                    cell_f(t),
                    cell_f(ratio),
                    c0,
                ],
                None,
            );
        }
    }
    Ok(report)
}

fn run_export_contour(config: &ExperimentConfig) -> Result<EstimateReport> {
    let x = config.x.unwrap() as f64;
    let y = config.y.unwrap();
    let table = PrimeTable::up_to(y.max(3));
    let path = match &config.zeros {
        Some(zp) => {
            let zeros = zz::load_zeros(zp, config.max_zeros)?;
            let with_nu: Vec<ZeroWithNu> = zeros
                .ordinates()
                .iter()
                .map(|&g| ZeroWithNu { gamma: g, nu: 0.5 })
                .collect();
            contour::build_gamma(&with_nu, x, y, config.eps, config.big_h.min(x), &table)?
        }
        None => contour::gamma0_path(x, y, config.eps, &table)?,
    };
    let out_path = config.export_path.as_ref().unwrap();
    let mut file = fs::File::create(out_path)
        .map_err(|e| Error::Dataset(format!("cannot create {}: {e}", out_path.display())))?;
    let io = |e: std::io::Error| Error::Dataset(format!("polyline write failed: {e}"));
    writeln!(file, "t,sigma").map_err(io)?;
    for (t, sigma) in path.sample_polyline(config.samples.max(2)) {
        writeln!(file, "{},{}", cell_f(t), cell_f(sigma)).map_err(io)?;
    }
    let (t_min, t_max) = path.t_range();
    let mut report = EstimateReport::new(
        "export-contour",
        vec!["x", "y", "eps", "segments", "t_min", "t_max", "polyline"],
        config.seed,
    );
    report.push_row(
        vec![
            cell_f(x),
            cell_u(y),
            cell_f(config.eps),
            cell_u(path.segments.len() as u64),
            cell_f(t_min),
            cell_f(t_max),
            out_path.display().to_string(),
        ],
        None,
    );
    Ok(report)
}
