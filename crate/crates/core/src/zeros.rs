//! Zeta-zero datasets and the explicit formula for Chebyshev's ψ.
//!
//! Zero files hold one positive ordinate per line, ascending, with at least
//! twelve significant digits — the layout of the widely distributed public
//! tables. Every dataset zero is taken on the critical line.

use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::par::{self, KahanSum};

/// Ascending ordinates of nontrivial zeta zeros.
#[derive(Debug, Clone)]
pub struct ZeroList {
    ordinates: Vec<f64>,
    source: String,
}

impl ZeroList {
    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn count(&self) -> usize {
        self.ordinates.len()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn max_ordinate(&self) -> f64 {
        *self.ordinates.last().unwrap()
    }

    /// Number of ordinates `0 < γ <= t`.
    pub fn count_to(&self, t: f64) -> usize {
        self.ordinates.partition_point(|&g| g <= t)
    }

    /// Build from raw ordinates (for synthetic tests); same validation as
    /// file loading.
    pub fn from_ordinates(ordinates: Vec<f64>, source: &str) -> Result<Self> {
        validate_ordinates(&ordinates)?;
        Ok(ZeroList {
            ordinates,
            source: source.to_string(),
        })
    }
}

fn validate_ordinates(ordinates: &[f64]) -> Result<()> {
    if ordinates.is_empty() {
        return Err(Error::Dataset("no zeros".into()));
    }
    let first = ordinates[0];
    if !(14.0 < first && first < 14.2) {
        return Err(Error::Dataset(format!(
            "first ordinate {first} outside the sanity window (14.0, 14.2)"
        )));
    }
    for (i, w) in ordinates.windows(2).enumerate() {
        if !(w[1] > w[0]) {
            return Err(Error::Dataset(format!(
                "ordinates not strictly ascending at entry {}",
                i + 2
            )));
        }
    }
    Ok(())
}

/// Load at most `max_count` ordinates from a plain-text file, one decimal
/// value per line. Malformed lines abort with their line number; NaN,
/// infinities, non-positive and descending values are rejected.
pub fn load_zeros(path: &Path, max_count: usize) -> Result<ZeroList> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Dataset(format!("cannot read {}: {e}", path.display())))?;
    let mut ordinates = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if ordinates.len() >= max_count {
            break;
        }
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let v: f64 = trimmed.parse().map_err(|_| {
            Error::Dataset(format!(
                "{}:{}: not a decimal ordinate: {trimmed:?}",
                path.display(),
                lineno + 1
            ))
        })?;
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::Dataset(format!(
                "{}:{}: ordinate must be finite and positive, got {v}",
                path.display(),
                lineno + 1
            )));
        }
        if let Some(&prev) = ordinates.last() {
            if v <= prev {
                return Err(Error::Dataset(format!(
                    "{}:{}: ordinate {v} not above predecessor {prev}",
                    path.display(),
                    lineno + 1
                )));
            }
        }
        ordinates.push(v);
    }
    validate_ordinates(&ordinates)?;
    Ok(ZeroList {
        ordinates,
        source: path.display().to_string(),
    })
}

const ZERO_BLOCK: u64 = 1 << 12;

/// Truncated explicit formula for `ψ(x) = Σ_{n ≤ x} Λ(n)`:
/// `x − Σ_{0<γ≤T} 2 Re(x^ρ/ρ) − log 2π − ½ log(1 − x^{-2})`
/// with `ρ = 1/2 + iγ`. Conjugate zeros are folded into the doubled real
/// part.
pub fn chebyshev_psi_explicit(x: f64, t_max: f64, zeros: &ZeroList) -> Result<f64> {
    if !(x >= 2.0) {
        return Err(Error::Domain(format!("need x >= 2, got {x}")));
    }
    if t_max > zeros.max_ordinate() {
        return Err(Error::Domain(format!(
            "T = {t_max} beyond dataset reach {}",
            zeros.max_ordinate()
        )));
    }
    let n = zeros.count_to(t_max) as u64;
    let ln_x = x.ln();
    let sqrt_x = x.sqrt();
    let ords = zeros.ordinates();
    let zero_sum = par::sum_f64_blocks(0, n, ZERO_BLOCK, |a, b| {
        let mut acc = KahanSum::default();
        for &g in &ords[a as usize..b as usize] {
            let rho = Complex64::new(0.5, g);
            let term = Complex64::from_polar(sqrt_x, g * ln_x) / rho;
            acc.add(2.0 * term.re);
        }
        acc.value()
    });
    let trivial = -(2.0 * std::f64::consts::PI).ln() - 0.5 * (1.0 - x.powi(-2)).ln();
    Ok(x - zero_sum + trivial)
}

/// Prime count estimate for `(x1, x1 + h1]` from the differenced explicit
/// formula: `(ψ_T(x1+h1) − ψ_T(x1)) / log x1`. The prime-power correction is
/// neglected here and reported separately by callers.
pub fn prime_interval_explicit(x1: f64, h1: f64, t_max: f64, zeros: &ZeroList) -> Result<f64> {
    if h1 < 0.0 {
        return Err(Error::Domain("h1 must be nonnegative".into()));
    }
    if h1 == 0.0 {
        return Ok(0.0);
    }
    let upper = chebyshev_psi_explicit(x1 + h1, t_max, zeros)?;
    let lower = chebyshev_psi_explicit(x1, t_max, zeros)?;
    Ok((upper - lower) / x1.ln())
}

/// Crude upper bound `(log x)² sqrt(x)` on the prime-power part of `ψ`.
pub fn prime_power_correction_bound(x: f64) -> f64 {
    x.ln().powi(2) * x.sqrt()
}

/// Truncation diagnostics per grid height `T`.
#[derive(Debug, Clone, Copy)]
pub struct ZeroSumPoint {
    pub t: f64,
    /// `N(T)`: zeros with `0 < γ <= T`.
    pub count: u64,
    /// `Σ_{γ<=T} 1/|ρ|`.
    pub sum_inv_rho: f64,
    /// `Σ_{γ<=T} x^{Re ρ − 1} = N(T)/sqrt(x)`.
    pub sum_x_pow: f64,
}

/// Partial-sum profile of the zero set along a `T` grid, for truncation-error
/// models.
pub fn zero_sum_decay(x: f64, zeros: &ZeroList, t_grid: &[f64]) -> Vec<ZeroSumPoint> {
    let ords = zeros.ordinates();
    t_grid
        .iter()
        .map(|&t| {
            let n = zeros.count_to(t);
            let mut acc = KahanSum::default();
            for &g in &ords[..n] {
                acc.add(1.0 / (0.25 + g * g).sqrt());
            }
            ZeroSumPoint {
                t,
                count: n as u64,
                sum_inv_rho: acc.value(),
                sum_x_pow: n as f64 / x.sqrt(),
            }
        })
        .collect()
}
