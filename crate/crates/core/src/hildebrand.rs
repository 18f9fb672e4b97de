//! Direct density estimator for very smooth-friendly ranges (`y` near `x`):
//! the inclusion-exclusion functional `g(x, y)`, prime short-interval
//! densities, and the interval-size boundary example.
//!
//! The production route evaluates the collapsed identity
//! `g(x, y) = 1 − Σ_{r ≤ x/y, r y-smooth} 1/(r log(x/r))`;
//! the literal alternating sum over tuples of distinct primes `> y` is kept
//! as an oracle, and the two must agree to near machine precision.

use crate::error::{Error, Result};
use crate::par;
use crate::primes::isqrt;
use crate::sieve::{self, SieveBudget};

/// How a [`GEstimate`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GMethod {
    /// Literal alternating sum over subsets of distinct primes `> y`.
    RawTripleSum,
    /// Collapsed identity over smooth `r <= x/y`.
    SmoothSumIdentity,
}

impl GMethod {
    pub fn id(self) -> &'static str {
        match self {
            GMethod::RawTripleSum => "raw-triple-sum",
            GMethod::SmoothSumIdentity => "smooth-sum-identity",
        }
    }
}

/// Value of `g(x, y)` together with enumeration bookkeeping.
#[derive(Debug, Clone, Copy)]
pub struct GEstimate {
    pub value: f64,
    pub terms_enumerated: u64,
    pub method: GMethod,
}

/// Enumeration budget guard: `x/y` may not exceed this by default.
pub const G_ENUMERATION_CAP: f64 = 1e7;

/// `g(x, y)` by the smooth-sum identity (production path).
pub fn g_estimate(x: f64, y: u64, budget: &SieveBudget) -> Result<GEstimate> {
    check_g_budget(x, y)?;
    let r_max = (x / y as f64).floor() as u64;
    if r_max == 0 {
        return Ok(GEstimate {
            value: 1.0,
            terms_enumerated: 0,
            method: GMethod::SmoothSumIdentity,
        });
    }
    let ln_x = x.ln();
    let cap = y.min(isqrt(r_max));
    let divs = odd_divs_for(cap);
    let (sum, terms) = {
        let parts = par::map_blocks(0, r_max, budget.segment_len, |a, b| {
            let mut acc = par::KahanSum::default();
            let mut n_terms = 0u64;
            scan_smooth(a, b, y, cap, &divs, |r| {
                acc.add(1.0 / (r as f64 * (ln_x - (r as f64).ln())));
                n_terms += 1;
            });
            (acc.value(), n_terms)
        });
        let mut acc = par::KahanSum::default();
        let mut total_terms = 0;
        for (s, c) in parts {
            acc.add(s);
            total_terms += c;
        }
        (acc.value(), total_terms)
    };
    Ok(GEstimate {
        value: 1.0 - sum,
        terms_enumerated: terms,
        method: GMethod::SmoothSumIdentity,
    })
}

/// `g(x, y)` by the literal alternating sum: for every `r <= x/y` it
/// enumerates the subsets of the distinct primes `> y` dividing `r`
/// (unordered, as the inclusion-exclusion identity requires) and adds
/// `(−1)^k / (r log(x/r))` per subset of size `k − 1`.
pub fn g_estimate_raw(x: f64, y: u64, budget: &SieveBudget) -> Result<GEstimate> {
    check_g_budget(x, y)?;
    let r_max = (x / y as f64).floor() as u64;
    if r_max == 0 {
        return Ok(GEstimate {
            value: 1.0,
            terms_enumerated: 0,
            method: GMethod::RawTripleSum,
        });
    }
    let ln_x = x.ln();
    let u = x.ln() / (y as f64).ln();
    let cap = isqrt(r_max);
    let divs = odd_divs_for(cap);
    let parts = par::map_blocks(0, r_max, budget.segment_len, |a, b| {
        let len = (b - a) as usize;
        let mut counts = vec![0u8; len];
        count_large_prime_divisors(a, b, y, cap, &divs, &mut counts);
        let mut acc = par::KahanSum::default();
        let mut n_terms = 0u64;
        for (i, &d) in counts.iter().enumerate() {
            let r = a + 1 + i as u64;
            let base = 1.0 / (r as f64 * (ln_x - (r as f64).ln()));
            // subsets of the d distinct primes > y, grouped by size j = k − 1
            let mut binom = 1.0f64;
            for j in 0..=d as u32 {
                let k = j + 1;
                assert!(
                    (k as f64) <= u + 1.0,
                    "enumerator produced k = {k} beyond the u+1 cap at r = {r}"
                );
                let sign = if k % 2 == 1 { -1.0 } else { 1.0 };
                acc.add(sign * binom * base);
                n_terms += 1;
                binom = binom * (d as u32 - j) as f64 / (j + 1) as f64;
            }
        }
        (acc.value(), n_terms)
    });
    let mut acc = par::KahanSum::default();
    let mut total_terms = 0;
    for (s, c) in parts {
        acc.add(s);
        total_terms += c;
    }
    Ok(GEstimate {
        value: 1.0 + acc.value(),
        terms_enumerated: total_terms,
        method: GMethod::RawTripleSum,
    })
}

fn check_g_budget(x: f64, y: u64) -> Result<()> {
    if !(x >= 2.0) || y < 2 {
        return Err(Error::Domain(format!("need x >= 2, y >= 2, got ({x}, {y})")));
    }
    if x / y as f64 > G_ENUMERATION_CAP {
        return Err(Error::Budget(format!(
            "x/y = {} exceeds enumeration cap {G_ENUMERATION_CAP}",
            x / y as f64
        )));
    }
    Ok(())
}

fn odd_divs_for(cap: u64) -> Vec<crate::primes::ExactDiv> {
    crate::primes::simple_primes(cap)
        .into_iter()
        .filter(|&p| p > 2)
        .map(crate::primes::ExactDiv::new)
        .collect()
}

/// Visit every `y`-smooth `r` in `(a, b]`.
fn scan_smooth(
    a: u64,
    b: u64,
    y: u64,
    cap: u64,
    divs: &[crate::primes::ExactDiv],
    mut visit: impl FnMut(u64),
) {
    let len = (b - a) as usize;
    let mut rem: Vec<u64> = (0..len).map(|i| a + 1 + i as u64).collect();
    if cap >= 2 {
        let first_even = if (a + 1) % 2 == 0 { 0 } else { 1 };
        let mut i = first_even;
        while i < len {
            rem[i] >>= rem[i].trailing_zeros();
            i += 2;
        }
    }
    for d in divs {
        let p = d.p;
        let mut m = (a / p + 1) * p;
        while m <= b {
            d.divide_out(&mut rem[(m - a - 1) as usize]);
            m += p;
        }
    }
    for (i, &r) in rem.iter().enumerate() {
        if r <= y {
            visit(a + 1 + i as u64);
        }
    }
}

/// Count, per position, the distinct primes `> y` dividing each integer.
fn count_large_prime_divisors(
    a: u64,
    b: u64,
    y: u64,
    cap: u64,
    divs: &[crate::primes::ExactDiv],
    out: &mut [u8],
) {
    let len = (b - a) as usize;
    let mut rem: Vec<u64> = (0..len).map(|i| a + 1 + i as u64).collect();
    if cap >= 2 {
        let first_even = if (a + 1) % 2 == 0 { 0 } else { 1 };
        let mut i = first_even;
        while i < len {
            rem[i] >>= rem[i].trailing_zeros();
            i += 2;
        }
    }
    for d in divs {
        let p = d.p;
        let mut m = (a / p + 1) * p;
        while m <= b {
            let i = (m - a - 1) as usize;
            d.divide_out(&mut rem[i]);
            if p > y {
                out[i] += 1;
            }
            m += p;
        }
    }
    for (i, &r) in rem.iter().enumerate() {
        if r > 1 && r > y {
            out[i] += 1;
        }
    }
}

/// Short-interval estimate `h · g(x, y)` for large `y`.
pub fn short_interval_estimate_large_y(
    x: f64,
    h: f64,
    y: u64,
    budget: &SieveBudget,
) -> Result<f64> {
    if h < 0.0 {
        return Err(Error::Domain("h must be nonnegative".into()));
    }
    Ok(h * g_estimate(x, y, budget)?.value)
}

/// Main-term density `h1 / log x1` for primes in `(x1, x1 + h1]`.
pub fn prime_density_estimate(x1: f64, h1: f64) -> Result<f64> {
    if !(x1 >= 10.0 && h1 >= 10.0) {
        return Err(Error::Domain(format!(
            "need x1, h1 >= 10, got ({x1}, {h1})"
        )));
    }
    Ok(h1 / x1.ln())
}

/// All counts of the interval-size boundary example at scale `x`:
/// with `y = ⌊(x + x^{9/10})/2⌋`, every non-smooth integer of
/// `(x, x+h]` is `p` or `2p` for a prime `p > y`, so the smooth count
/// decomposes exactly into three elementary counts.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryExample {
    pub x: u64,
    pub y: u64,
    pub h1: u64,
    pub h2: u64,
    /// exact smooth counts on (x, x+h]
    pub smooth_h1: u64,
    pub smooth_h2: u64,
    /// #integers, #primes > y in (x, x+h], #primes > y in (x/2, (x+h)/2]
    pub integers_h1: u64,
    pub primes_large_h1: u64,
    pub primes_half_h1: u64,
    pub integers_h2: u64,
    pub primes_large_h2: u64,
    pub primes_half_h2: u64,
    pub identity_h1: bool,
    pub identity_h2: bool,
    /// short densities and the predicted gap 1/(4 log y)
    pub density_h1: f64,
    pub density_h2: f64,
    pub predicted_gap: f64,
}

pub fn boundary_example(x: u64, budget: &SieveBudget) -> Result<BoundaryExample> {
    if x < 100 {
        return Err(Error::Domain("boundary example needs x >= 100".into()));
    }
    let x9 = (x as f64).powf(0.9).floor() as u64;
    let h2 = x9;
    let h1 = 2 * x9;
    let y = (x + x9) / 2;
    let smooth_h1 = sieve::psi_interval_exact(x, h1, y, budget)?;
    let smooth_h2 = sieve::psi_interval_exact(x, h2, y, budget)?;

    let primes_gt_y = |lo: u64, hi: u64| -> Result<u64> {
        // primes in (lo, hi] that exceed y
        let from = lo.max(y);
        if hi <= from {
            return Ok(0);
        }
        sieve::prime_count_interval(from as f64, (hi - from) as f64, budget)
    };
    let primes_large_h1 = primes_gt_y(x, x + h1)?;
    let primes_large_h2 = primes_gt_y(x, x + h2)?;
    let primes_half_h1 = primes_gt_y(x / 2, (x + h1) / 2)?;
    let primes_half_h2 = primes_gt_y(x / 2, (x + h2) / 2)?;

    let identity_h1 = smooth_h1 == h1 - primes_large_h1 - primes_half_h1;
    let identity_h2 = smooth_h2 == h2 - primes_large_h2 - primes_half_h2;
    let density_h1 = smooth_h1 as f64 / h1 as f64;
    let density_h2 = smooth_h2 as f64 / h2 as f64;

    Ok(BoundaryExample {
        x,
        y,
        h1,
        h2,
        smooth_h1,
        smooth_h2,
        integers_h1: h1,
        primes_large_h1,
        primes_half_h1,
        integers_h2: h2,
        primes_large_h2,
        primes_half_h2,
        identity_h1,
        identity_h2,
        density_h1,
        density_h2,
        predicted_gap: 1.0 / (4.0 * (y as f64).ln()),
    })
}
