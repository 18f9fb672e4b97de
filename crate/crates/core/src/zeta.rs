//! The smooth zeta function `ζ(s, y) = Π_{p ≤ y} (1 − p^{-s})^{-1}` and its
//! relatives, valid for `Re(s) > 0`.
//!
//! Products are accumulated in the log domain and exponentiated once; each
//! factor `log(1 − w)` switches to a series for small `|w|` to avoid
//! cancellation. Prime sums use compensated summation over fixed blocks, so
//! results do not depend on the worker count.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::par::{self, KahanComplex};
use crate::primes::PrimeTable;

/// Point `s = σ + it` of the evaluation strip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPoint {
    pub sigma: f64,
    pub t: f64,
}

impl ComplexPoint {
    pub fn new(sigma: f64, t: f64) -> Self {
        ComplexPoint { sigma, t }
    }

    pub fn as_complex(self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }
}

impl From<ComplexPoint> for Complex64 {
    fn from(p: ComplexPoint) -> Complex64 {
        p.as_complex()
    }
}

/// Evaluation settings for the smooth zeta family.
#[derive(Debug, Clone, Copy)]
pub struct EvalConfig {
    /// Smoothness bound `y`: the Euler product runs over `p <= prime_limit`.
    pub prime_limit: u64,
    /// Compensated (Kahan) summation for all prime sums.
    pub compensated_summation: bool,
    /// Log-domain magnitudes beyond this threshold refuse to exponentiate.
    pub overflow_guard: f64,
}

impl EvalConfig {
    pub fn new(y: u64) -> Self {
        EvalConfig {
            prime_limit: y,
            compensated_summation: true,
            overflow_guard: 700.0,
        }
    }
}

const PRIME_BLOCK: u64 = 1 << 13;

fn require_positive_sigma(s: Complex64) -> Result<()> {
    if s.re <= 0.0 {
        return Err(Error::Domain(format!(
            "Re(s) = {} but the Euler product needs Re(s) > 0",
            s.re
        )));
    }
    Ok(())
}

/// `log ζ(s, y) = −Σ_{p ≤ y} log(1 − p^{-s})`, principal branch per factor.
pub fn log_zeta_smooth(s: Complex64, cfg: &EvalConfig, table: &PrimeTable) -> Result<Complex64> {
    require_positive_sigma(s)?;
    let (_, logs) = table.slice_leq(cfg.prime_limit)?;
    Ok(prime_block_sum(logs, cfg, |lp| {
        let w = (-s * lp).exp();
        neg_log_one_minus(w)
    }))
}

/// `ζ(s, y)` itself: `exp` of [`log_zeta_smooth`], with an overflow guard.
pub fn zeta_smooth(s: Complex64, cfg: &EvalConfig, table: &PrimeTable) -> Result<Complex64> {
    let lz = log_zeta_smooth(s, cfg, table)?;
    if lz.re.abs() > cfg.overflow_guard {
        return Err(Error::Overflow(format!(
            "log|zeta(s,y)| = {} beyond guard {}",
            lz.re, cfg.overflow_guard
        )));
    }
    Ok(lz.exp())
}

/// `−ζ'/ζ(s, y) = Σ_{p ≤ y} log p / (p^s − 1)`.
///
/// Fails when some `|p^s − 1| < 1e-14` (a pole of the summand).
pub fn log_deriv_zeta_smooth(
    s: Complex64,
    cfg: &EvalConfig,
    table: &PrimeTable,
) -> Result<Complex64> {
    require_positive_sigma(s)?;
    let (_, logs) = table.slice_leq(cfg.prime_limit)?;
    // scan for near-singular denominators before summing
    for &lp in logs {
        let d = (s * lp).exp() - 1.0;
        if d.norm() < 1e-14 {
            return Err(Error::Singularity(format!(
                "p^s - 1 vanishes at ln p = {lp}, s = {s}"
            )));
        }
    }
    Ok(prime_block_sum(logs, cfg, |lp| {
        lp / ((s * lp).exp() - 1.0)
    }))
}

/// Truncated von Mangoldt Dirichlet sum `Σ_{n ≤ z} Λ(n) n^{-s}`, exact over
/// prime powers.
pub fn lambda_sum(s: Complex64, z: u64, table: &PrimeTable) -> Result<Complex64> {
    if z < 2 {
        return Err(Error::Domain(format!("z must be >= 2, got {z}")));
    }
    let (ps, logs) = table.slice_leq(z)?;
    let parts = par::map_blocks(0, ps.len() as u64, PRIME_BLOCK, |a, b| {
        let mut acc = KahanComplex::default();
        for i in a as usize..b as usize {
            let p = ps[i];
            let lp = logs[i];
            let w = (-s * lp).exp();
            let mut pk = p;
            let mut wk = w;
            loop {
                acc.add(lp * wk);
                match pk.checked_mul(p) {
                    Some(next) if next <= z => {
                        pk = next;
                        wk *= w;
                    }
                    _ => break,
                }
            }
        }
        acc.value()
    });
    let mut acc = KahanComplex::default();
    for p in parts {
        acc.add(p);
    }
    Ok(acc.value())
}

/// Weighted Euler product `ζ_W(s, y) = Π_p (1 − W(p/y) p^{-s})^{-1}`.
///
/// Factors with `p > y(1+κ)` equal 1 and are skipped; requires `κ y >= 1`.
pub fn zeta_smooth_weighted<W>(
    s: Complex64,
    cfg: &EvalConfig,
    kappa: f64,
    w: &W,
    table: &PrimeTable,
) -> Result<Complex64>
where
    W: Fn(f64) -> f64 + Sync,
{
    require_positive_sigma(s)?;
    let y = cfg.prime_limit;
    let kappa_y = kappa * y as f64;
    if kappa_y < 1.0 {
        return Err(Error::Domain(format!(
            "kappa * y = {kappa_y} < 1 violates the weight hypothesis"
        )));
    }
    let ycut = ((y as f64) * (1.0 + kappa)).floor() as u64;
    let (ps, logs) = table.slice_leq(ycut)?;
    let yf = y as f64;
    let parts = par::map_blocks(0, ps.len() as u64, PRIME_BLOCK, |a, b| {
        let mut acc = KahanComplex::default();
        for i in a as usize..b as usize {
            let wv = if ps[i] <= y { 1.0 } else { w(ps[i] as f64 / yf) };
            if wv == 0.0 {
                continue;
            }
            let z = wv * (-s * logs[i]).exp();
            acc.add(neg_log_one_minus(z));
        }
        acc.value()
    });
    let mut acc = KahanComplex::default();
    for p in parts {
        acc.add(p);
    }
    let lz = acc.value();
    if lz.re.abs() > cfg.overflow_guard {
        return Err(Error::Overflow(format!("log|zeta_W| = {}", lz.re)));
    }
    Ok(lz.exp())
}

/// Decay profile `|ζ(α+it, y)| / ζ(α, y)` along a grid of ordinates, with the
/// saddle point solved internally.
pub fn ratio_decay_profile(
    x: f64,
    y: u64,
    t_grid: &[f64],
    table: &PrimeTable,
) -> Result<Vec<f64>> {
    let alpha = crate::saddle::saddle_point(x, y, 1e-10, table)?.alpha;
    let cfg = EvalConfig::new(y);
    let base = log_zeta_smooth(Complex64::new(alpha, 0.0), &cfg, table)?.re;
    t_grid
        .iter()
        .map(|&t| {
            let lz = log_zeta_smooth(Complex64::new(alpha, t), &cfg, table)?;
            Ok((lz.re - base).exp())
        })
        .collect()
}

/// Implied decay constant from a measured ratio at ordinate `t`:
/// `c0 = −log(ratio) (t² + (1−α)²) / (u t²)`. `None` when it is undefined.
pub fn implied_c0(ratio: f64, t: f64, alpha: f64, u: f64) -> Option<f64> {
    if !(ratio > 0.0 && ratio < 1.0) || t == 0.0 || u <= 0.0 {
        return None;
    }
    let t2 = t * t;
    Some(-ratio.ln() * (t2 + (1.0 - alpha).powi(2)) / (u * t2))
}

/// `−log(1 − w)` with a series fallback for small `|w|`.
#[inline]
pub(crate) fn neg_log_one_minus(w: Complex64) -> Complex64 {
    if w.norm_sqr() < 1e-8 {
        // |w| < 1e-4: -log(1-w) = w + w^2/2 + w^3/3 + w^4/4 + O(w^5)
        let w2 = w * w;
        w + w2 * 0.5 + w2 * w / 3.0 + w2 * w2 * 0.25
    } else {
        -(Complex64::new(1.0, 0.0) - w).ln()
    }
}

/// Sum `f(ln p)` over table primes `<= cfg.prime_limit` in fixed blocks.
fn prime_block_sum<F>(logs: &[f64], cfg: &EvalConfig, f: F) -> Complex64
where
    F: Fn(f64) -> Complex64 + Sync,
{
    let parts = par::map_blocks(0, logs.len() as u64, PRIME_BLOCK, |a, b| {
        if cfg.compensated_summation {
            let mut acc = KahanComplex::default();
            for &lp in &logs[a as usize..b as usize] {
                acc.add(f(lp));
            }
            acc.value()
        } else {
            let mut acc = Complex64::new(0.0, 0.0);
            for &lp in &logs[a as usize..b as usize] {
                acc += f(lp);
            }
            acc
        }
    });
    let mut acc = KahanComplex::default();
    for p in parts {
        acc.add(p);
    }
    acc.value()
}
