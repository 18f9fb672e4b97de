//! Exact integer-side ground truth: smooth counts in long and short ranges,
//! weighted smooth counts, a literal inclusion-exclusion oracle, prime counts
//! in intervals, and partial sums of the von Mangoldt function.
//!
//! Two independent smoothness strategies are provided. `SpfMax` factors every
//! integer of a segment completely over the primes up to `sqrt(hi)` and tests
//! the largest prime factor. `DivideOut` removes only primes up to
//! `min(y, sqrt(hi))` and declares `n` smooth when the remaining cofactor is 1
//! or at most `y`. Both walk segments with exact division by precomputed
//! inverses modulo 2^64 instead of hardware division.

use crate::error::{Error, Result};
use crate::par;
use crate::primes::{isqrt, mark_composites, simple_primes, ExactDiv};

/// Work-size limits for the sieve operations.
#[derive(Debug, Clone, Copy)]
pub struct SieveBudget {
    /// Largest admissible sieve endpoint for counting passes.
    pub max_x: u64,
    /// Largest `x` for the exhaustive oracles (inclusion-exclusion).
    pub exhaustive_max_x: u64,
    /// Segment length for block decomposition.
    pub segment_len: u64,
}

impl Default for SieveBudget {
    fn default() -> Self {
        SieveBudget {
            max_x: 10_000_000_000,
            exhaustive_max_x: 1_000_000,
            segment_len: 1 << 22,
        }
    }
}

/// A smooth-counting problem: interval `(x, x+h]` (or `[1, x]` when `h = 0`)
/// with smoothness bound `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountQuery {
    pub x: u64,
    pub y: u64,
    pub h: u64,
}

impl CountQuery {
    pub fn validate(&self, budget: &SieveBudget) -> Result<()> {
        if self.y < 2 {
            return Err(Error::Domain(format!("y must be >= 2, got {}", self.y)));
        }
        if self.x < 1 {
            return Err(Error::Domain("x must be >= 1".into()));
        }
        if self.h > self.x {
            return Err(Error::Domain(format!(
                "h = {} exceeds x = {}",
                self.h, self.x
            )));
        }
        if self.y > 2 * self.x {
            return Err(Error::Domain(format!(
                "y = {} exceeds 2x = {}",
                self.y,
                2 * self.x
            )));
        }
        let hi = self
            .x
            .checked_add(self.h)
            .ok_or_else(|| Error::Domain("x + h overflows".into()))?;
        if hi > budget.max_x {
            return Err(Error::Budget(format!(
                "x + h = {hi} exceeds sieve budget {}",
                budget.max_x
            )));
        }
        Ok(())
    }
}

/// Which smoothness sieve to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SieveStrategy {
    /// Full factorisation per segment; tests the largest prime factor.
    SpfMax,
    /// Progressive removal of primes `<= min(y, sqrt(hi))`.
    DivideOut,
}

impl SieveStrategy {
    /// Identifier recorded in report provenance columns.
    pub fn provenance_id(self) -> &'static str {
        match self {
            SieveStrategy::SpfMax => "sieve:spf-max",
            SieveStrategy::DivideOut => "sieve:divide-out",
        }
    }
}

/// Smallest prime factor of every integer in `(lo, hi]`, `lo >= 1`.
#[derive(Debug, Clone)]
pub struct SpfSegment {
    pub lo: u64,
    pub hi: u64,
    spf: Vec<u64>,
}

impl SpfSegment {
    /// `base` must contain every prime up to `sqrt(hi)`.
    pub fn build(lo: u64, hi: u64, base: &[u64]) -> Self {
        assert!(lo >= 1 && lo < hi);
        let len = (hi - lo) as usize;
        let mut spf = vec![0u64; len];
        for &p in base {
            if p * p > hi {
                break;
            }
            let mut m = (lo / p + 1) * p;
            while m <= hi {
                let i = (m - lo - 1) as usize;
                if spf[i] == 0 {
                    spf[i] = p;
                }
                m += p;
            }
        }
        for (i, s) in spf.iter_mut().enumerate() {
            if *s == 0 {
                *s = lo + 1 + i as u64; // no factor <= sqrt(hi): n is prime
            }
        }
        SpfSegment { lo, hi, spf }
    }

    pub fn spf(&self, n: u64) -> u64 {
        assert!(n > self.lo && n <= self.hi);
        self.spf[(n - self.lo - 1) as usize]
    }
}

/// Divide out all factors 2 from even positions of `rem`, where position `i`
/// holds `a + 1 + i`. Returns nothing; updates `rem` in place and calls
/// `touch(i)` on every even position.
#[inline]
fn strip_twos(a: u64, rem: &mut [u64], mut touch: impl FnMut(usize)) {
    let first_even = if (a + 1) % 2 == 0 { 0 } else { 1 };
    let mut i = first_even;
    while i < rem.len() {
        let tz = rem[i].trailing_zeros();
        rem[i] >>= tz;
        touch(i);
        i += 2;
    }
}

/// Count integers `n` in `(a, b]` whose cofactor after removing all primes
/// `<= cap` is at most `y` (DivideOut decision rule). `divs` holds the odd
/// primes `<= cap`.
fn count_divide_out(a: u64, b: u64, y: u64, cap: u64, divs: &[ExactDiv]) -> u64 {
    let len = (b - a) as usize;
    let mut rem: Vec<u64> = (0..len).map(|i| a + 1 + i as u64).collect();
    if cap >= 2 {
        strip_twos(a, &mut rem, |_| {});
    }
    for d in divs {
        let p = d.p;
        let mut m = (a / p + 1) * p;
        while m <= b {
            d.divide_out(&mut rem[(m - a - 1) as usize]);
            m += p;
        }
    }
    rem.iter().filter(|&&r| r <= y).count() as u64
}

/// Full-factorisation scan: for each `n` in `(a, b]` compute the cofactor
/// `rem` after removing all primes `<= cap` and the largest removed prime
/// `maxp` (1 when none), then hand `(n, rem, maxp)` to `sink`.
fn scan_spf_segment(
    a: u64,
    b: u64,
    cap: u64,
    divs: &[ExactDiv],
    mut sink: impl FnMut(u64, u64, u64),
) {
    let len = (b - a) as usize;
    let mut rem: Vec<u64> = (0..len).map(|i| a + 1 + i as u64).collect();
    let mut maxp = vec![1u32; len];
    if cap >= 2 {
        strip_twos(a, &mut rem, |i| maxp[i] = 2);
    }
    for d in divs {
        let p = d.p;
        let mut m = (a / p + 1) * p;
        while m <= b {
            let i = (m - a - 1) as usize;
            d.divide_out(&mut rem[i]);
            maxp[i] = p as u32; // primes ascend, so the last write wins
            m += p;
        }
    }
    for i in 0..len {
        sink(a + 1 + i as u64, rem[i], maxp[i] as u64);
    }
}

fn odd_divs(cap: u64) -> Vec<ExactDiv> {
    simple_primes(cap)
        .into_iter()
        .filter(|&p| p > 2)
        .map(ExactDiv::new)
        .collect()
}

/// `Ψ(x+h, y) − Ψ(x, y)`: the number of `y`-smooth integers in `(x, x+h]`,
/// sieving only that interval.
pub fn psi_interval_exact(x: u64, h: u64, y: u64, budget: &SieveBudget) -> Result<u64> {
    psi_interval_exact_with(SieveStrategy::DivideOut, x, h, y, budget)
}

pub fn psi_interval_exact_with(
    strategy: SieveStrategy,
    x: u64,
    h: u64,
    y: u64,
    budget: &SieveBudget,
) -> Result<u64> {
    smooth_count_range(strategy, x, x + h, y, budget_check(x, h, y, budget)?)
}

/// `Ψ(x, y)`: the number of `y`-smooth integers in `[1, x]` (1 is smooth for
/// every `y`).
pub fn psi_exact(x: u64, y: u64, budget: &SieveBudget) -> Result<u64> {
    psi_exact_with(SieveStrategy::DivideOut, x, y, budget)
}

pub fn psi_exact_with(
    strategy: SieveStrategy,
    x: u64,
    y: u64,
    budget: &SieveBudget,
) -> Result<u64> {
    smooth_count_range(strategy, 0, x, y, budget_check(x, 0, y, budget)?)
}

fn budget_check<'a>(x: u64, h: u64, y: u64, budget: &'a SieveBudget) -> Result<&'a SieveBudget> {
    CountQuery { x, y, h }.validate(budget)?;
    Ok(budget)
}

fn smooth_count_range(
    strategy: SieveStrategy,
    lo: u64,
    hi: u64,
    y: u64,
    budget: &SieveBudget,
) -> Result<u64> {
    if hi <= lo {
        return Ok(0);
    }
    let cap = match strategy {
        SieveStrategy::SpfMax => isqrt(hi),
        SieveStrategy::DivideOut => y.min(isqrt(hi)),
    };
    let divs = odd_divs(cap);
    let count = par::sum_u64_blocks(lo, hi, budget.segment_len, |a, b| match strategy {
        SieveStrategy::DivideOut => count_divide_out(a, b, y, cap, &divs),
        SieveStrategy::SpfMax => {
            let mut c = 0;
            scan_spf_segment(a, b, cap, &divs, |_, rem, maxp| {
                let smooth = maxp <= y && (rem == 1 || rem <= y);
                if smooth {
                    c += 1;
                }
            });
            c
        }
    });
    Ok(count)
}

/// `Ψ(x, y)` for several checkpoints and smoothness bounds in one cumulative
/// pass: returns `counts[ci][yi] = Ψ(checkpoints[ci], ys[yi])`. Both input
/// slices must be ascending.
pub fn psi_exact_multi(
    checkpoints: &[u64],
    ys: &[u64],
    budget: &SieveBudget,
) -> Result<Vec<Vec<u64>>> {
    if checkpoints.is_empty() || ys.is_empty() {
        return Ok(vec![vec![]; checkpoints.len()]);
    }
    assert!(checkpoints.windows(2).all(|w| w[0] < w[1]));
    assert!(ys.windows(2).all(|w| w[0] < w[1]));
    let last = *checkpoints.last().unwrap();
    for (&ck, &y) in checkpoints.iter().zip(ys.iter().cycle()) {
        CountQuery { x: ck, y: y.max(2), h: 0 }.validate(budget)?;
    }
    let cap = ys.last().unwrap().min(&isqrt(last)).to_owned().max(1);
    let divs = odd_divs(cap);

    let mut totals = vec![0u64; ys.len()];
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut prev = 0u64;
    for &ck in checkpoints {
        let parts = par::map_blocks(prev, ck, budget.segment_len, |a, b| {
            let mut bucket = vec![0u64; ys.len()];
            scan_spf_segment(a, b, cap, &divs, |_, rem, maxp| {
                let needed = if rem > 1 { rem } else { maxp };
                let idx = ys.partition_point(|&t| t < needed);
                if idx < bucket.len() {
                    bucket[idx] += 1;
                }
            });
            // bucket[j] counts n whose smallest admissible bound is ys[j]
            for j in 1..bucket.len() {
                bucket[j] += bucket[j - 1];
            }
            bucket
        });
        for part in parts {
            for (t, p) in totals.iter_mut().zip(part) {
                *t += p;
            }
        }
        out.push(totals.clone());
        prev = ck;
    }
    Ok(out)
}

/// Weighted smooth count `Ψ_W(x, y) = Σ_{n <= x} Π_i W(p_i / y)^{a_i}` over
/// the factorisations `n = p_1^{a_1} ... p_k^{a_k}`.
///
/// Requires `κ y >= 1`. Any weight that is 1 on `(0, 1]` and 0 on
/// `[1+κ, ∞)` may be supplied; see [`crate::weight::BumpWeight`].
pub fn psi_weighted_exact<W>(
    x: u64,
    y: u64,
    kappa: f64,
    w: &W,
    budget: &SieveBudget,
) -> Result<f64>
where
    W: Fn(f64) -> f64 + Sync,
{
    let kappa_y = kappa * y as f64;
    if kappa_y < 1.0 {
        return Err(Error::Domain(format!(
            "kappa * y = {kappa_y} < 1 violates the weight hypothesis"
        )));
    }
    CountQuery { x, y, h: 0 }.validate(budget)?;
    let cap = isqrt(x);
    let divs = odd_divs(cap);
    let yf = y as f64;
    let sum = par::sum_f64_blocks(0, x, budget.segment_len, |a, b| {
        let len = (b - a) as usize;
        let mut rem: Vec<u64> = (0..len).map(|i| a + 1 + i as u64).collect();
        let mut wt = vec![1.0f64; len];
        if cap >= 2 {
            let first_even = if (a + 1) % 2 == 0 { 0 } else { 1 };
            let mut i = first_even;
            while i < len {
                let tz = rem[i].trailing_zeros();
                rem[i] >>= tz;
                // p = 2 <= y always, so its weight factor is 1
                i += 2;
            }
        }
        for d in &divs {
            let p = d.p;
            let factor = w(p as f64 / yf);
            let mut m = (a / p + 1) * p;
            while m <= b {
                let i = (m - a - 1) as usize;
                let mult = d.divide_out(&mut rem[i]);
                if p > y {
                    wt[i] *= factor.powi(mult as i32);
                }
                m += p;
            }
        }
        let mut acc = par::KahanSum::default();
        for i in 0..len {
            let mut v = wt[i];
            if rem[i] > 1 && rem[i] > y {
                v *= w(rem[i] as f64 / yf);
            }
            acc.add(v);
        }
        acc.value()
    });
    Ok(sum)
}

/// Literal inclusion-exclusion count of smooth integers in `(x, x+h]`: for
/// each `n` it enumerates every subset `S` of the distinct primes `> y`
/// dividing `n` and sums `(-1)^{|S|}`. Subsets are unordered. Must coincide
/// with [`psi_interval_exact`]; exists as an independent oracle.
pub fn inclusion_exclusion_interval(x: u64, h: u64, y: u64, budget: &SieveBudget) -> Result<u64> {
    if y < 2 {
        return Err(Error::Domain("y must be >= 2".into()));
    }
    if x > budget.exhaustive_max_x || h > budget.exhaustive_max_x {
        return Err(Error::Budget(format!(
            "inclusion-exclusion capped at x, h <= {}",
            budget.exhaustive_max_x
        )));
    }
    let hi = x + h;
    if hi <= x {
        return Ok(0);
    }
    let cap = isqrt(hi);
    let divs = odd_divs(cap);
    const MAX_DISTINCT: usize = 15;
    let total = par::map_blocks(x, hi, budget.segment_len, |a, b| {
        let mut acc: i64 = 0;
        let len = (b - a) as usize;
        let mut large: Vec<([u64; MAX_DISTINCT], u8)> = vec![([0; MAX_DISTINCT], 0); len];
        scan_collect_large_primes(a, b, y, cap, &divs, &mut large);
        for &(_, d) in &large {
            for mask in 0u32..(1 << d) {
                acc += if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            }
        }
        acc
    })
    .into_iter()
    .sum::<i64>();
    debug_assert!(total >= 0);
    Ok(total as u64)
}

/// Fill `out[i]` with the distinct primes `> y` dividing `a + 1 + i`.
fn scan_collect_large_primes(
    a: u64,
    b: u64,
    y: u64,
    cap: u64,
    divs: &[ExactDiv],
    out: &mut [([u64; 15], u8)],
) {
    let len = (b - a) as usize;
    let mut rem: Vec<u64> = (0..len).map(|i| a + 1 + i as u64).collect();
    if cap >= 2 {
        strip_twos(a, &mut rem, |_| {});
    }
    for d in divs {
        let p = d.p;
        let mut m = (a / p + 1) * p;
        while m <= b {
            let i = (m - a - 1) as usize;
            d.divide_out(&mut rem[i]);
            if p > y {
                let (ref mut arr, ref mut d_len) = out[i];
                arr[*d_len as usize] = p;
                *d_len += 1;
            }
            m += p;
        }
    }
    for i in 0..len {
        if rem[i] > 1 && rem[i] > y {
            let (ref mut arr, ref mut d_len) = out[i];
            arr[*d_len as usize] = rem[i];
            *d_len += 1;
        }
    }
}

/// Number of primes in `(x1, x1 + h1]`, by segmented composite marking.
pub fn prime_count_interval(x1: f64, h1: f64, budget: &SieveBudget) -> Result<u64> {
    let (lo, hi) = interval_bounds(x1, h1, budget)?;
    if hi <= lo {
        return Ok(0);
    }
    let base = simple_primes(isqrt(hi));
    Ok(par::sum_u64_blocks(lo, hi, budget.segment_len, |a, b| {
        let composite = mark_composites(a, b, &base);
        composite
            .iter()
            .enumerate()
            .filter(|&(i, &c)| !c && a + 1 + i as u64 >= 2)
            .count() as u64
    }))
}

/// Same count via smallest-prime-factor segments (`spf(n) = n` iff `n` is
/// prime); independent code path used for cross-checks.
pub fn prime_count_interval_via_spf(x1: f64, h1: f64, budget: &SieveBudget) -> Result<u64> {
    let (lo, hi) = interval_bounds(x1, h1, budget)?;
    if hi <= lo {
        return Ok(0);
    }
    let base = simple_primes(isqrt(hi));
    Ok(par::sum_u64_blocks(
        lo.max(1),
        hi,
        budget.segment_len,
        |a, b| {
            let seg = SpfSegment::build(a, b, &base);
            (a + 1..=b).filter(|&n| n >= 2 && seg.spf(n) == n).count() as u64
        },
    ))
}

fn interval_bounds(x1: f64, h1: f64, budget: &SieveBudget) -> Result<(u64, u64)> {
    if !(x1 >= 0.0 && h1 >= 0.0) || !x1.is_finite() || !h1.is_finite() {
        return Err(Error::Domain(format!(
            "interval bounds must be finite and nonnegative, got ({x1}, {h1})"
        )));
    }
    let lo = x1.floor() as u64;
    let hi = (x1 + h1).floor() as u64;
    if hi > budget.max_x {
        return Err(Error::Budget(format!(
            "interval end {hi} exceeds sieve budget {}",
            budget.max_x
        )));
    }
    Ok((lo, hi))
}

/// `Σ_{n <= x} Λ(n)` with `Λ(p^k) = log p`: Chebyshev's ψ, exactly, including
/// prime powers.
pub fn lambda_exact_sum(x: f64, budget: &SieveBudget) -> Result<f64> {
    let (_, hi) = interval_bounds(0.0, x, budget)?;
    if hi < 2 {
        return Ok(0.0);
    }
    let mut total = par::KahanSum::default();
    total.add(crate::primes::sum_over_primes(0, hi, |p| (p as f64).ln()));
    // prime powers p^k <= x, k >= 2
    for p in simple_primes(isqrt(hi)) {
        let lp = (p as f64).ln();
        let mut pk = p * p;
        loop {
            total.add(lp);
            match pk.checked_mul(p) {
                Some(next) if next <= hi => pk = next,
                _ => break,
            }
        }
    }
    Ok(total.value())
}

/// `Σ_{p <= x} log p / (p - 1)`, which approaches `log x − γ`.
pub fn prime_log_weight_sum(x: u64, budget: &SieveBudget) -> Result<f64> {
    if x > budget.max_x {
        return Err(Error::Budget(format!(
            "x = {x} exceeds sieve budget {}",
            budget.max_x
        )));
    }
    Ok(crate::primes::sum_over_primes(0, x, |p| {
        (p as f64).ln() / (p - 1) as f64
    }))
}
