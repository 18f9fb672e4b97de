//! Prime generation: simple and segmented sieves, shared log-prime tables,
//! and exact division by a fixed odd prime via its inverse modulo 2^64.

use crate::error::{Error, Result};
use crate::par;

/// All primes `<= limit` by a plain byte sieve. Intended for `limit` up to
/// around 10^8; larger ranges should stream segments instead.
pub fn simple_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::with_capacity(est_prime_count(limit));
    let mut p = 2usize;
    while p * p <= n {
        if !composite[p] {
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
        p += 1;
    }
    for q in 2..=n {
        if !composite[q] {
            primes.push(q as u64);
        }
    }
    primes
}

fn est_prime_count(limit: u64) -> usize {
    if limit < 10 {
        8
    } else {
        let x = limit as f64;
        (x / x.ln() * 1.2) as usize
    }
}

/// Ascending table of all primes up to `limit`, with their natural logs.
///
/// The log table is shared by the zeta evaluators and the saddle solver so
/// that every module prices `p^s` from the same `ln p`.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
    logs: Vec<f64>,
}

impl PrimeTable {
    pub fn up_to(limit: u64) -> Self {
        let primes = simple_primes(limit);
        let logs = primes.iter().map(|&p| (p as f64).ln()).collect();
        PrimeTable {
            limit,
            primes,
            logs,
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn logs(&self) -> &[f64] {
        &self.logs
    }

    /// Number of table primes `<= y`.
    pub fn count_leq(&self, y: u64) -> usize {
        self.primes.partition_point(|&p| p <= y)
    }

    /// Primes `<= y` as a slice, erroring when the table is too short.
    pub fn primes_leq(&self, y: u64) -> Result<&[u64]> {
        if y > self.limit {
            return Err(Error::Domain(format!(
                "prime table covers only p <= {}, need {}",
                self.limit, y
            )));
        }
        Ok(&self.primes[..self.count_leq(y)])
    }

    /// `(primes, logs)` restricted to `p <= y`.
    pub fn slice_leq(&self, y: u64) -> Result<(&[u64], &[f64])> {
        let k = self.primes_leq(y)?.len();
        Ok((&self.primes[..k], &self.logs[..k]))
    }
}

/// Inverse of an odd `d` modulo 2^64 (Newton iteration, five steps).
pub fn mod_inv_u64(d: u64) -> u64 {
    debug_assert!(d % 2 == 1);
    let mut x = d; // correct mod 2^3
    for _ in 0..5 {
        x = x.wrapping_mul(2u64.wrapping_sub(d.wrapping_mul(x)));
    }
    x
}

/// Exact division by a fixed odd prime without hardware division:
/// `n * inv mod 2^64` equals `n / p` exactly when `p | n`, and exceeds
/// `floor(u64::MAX / p)` otherwise.
#[derive(Debug, Clone, Copy)]
pub struct ExactDiv {
    pub p: u64,
    inv: u64,
    lim: u64,
}

impl ExactDiv {
    pub fn new(p: u64) -> Self {
        debug_assert!(p % 2 == 1 && p > 1);
        ExactDiv {
            p,
            inv: mod_inv_u64(p),
            lim: u64::MAX / p,
        }
    }

    /// Divide out every factor `p` from `v`, returning the multiplicity.
    #[inline]
    pub fn divide_out(&self, v: &mut u64) -> u32 {
        let mut m = 0;
        loop {
            let q = v.wrapping_mul(self.inv);
            if q > self.lim {
                return m;
            }
            *v = q;
            m += 1;
        }
    }
}

/// Byte map of composites on `(lo, hi]`: entry `i` corresponds to `lo + 1 + i`
/// and is true when that integer has a prime factor `<= sqrt(hi)` smaller than
/// itself. `base` must contain all primes up to `sqrt(hi)`.
pub fn mark_composites(lo: u64, hi: u64, base: &[u64]) -> Vec<bool> {
    let len = (hi - lo) as usize;
    let mut composite = vec![false; len];
    for &p in base {
        if p * p > hi {
            break;
        }
        // first multiple of p in (lo, hi], never p itself
        let mut m = (lo / p + 1).max(2) * p;
        if m <= lo {
            m += p;
        }
        while m <= hi {
            composite[(m - lo - 1) as usize] = true;
            m += p;
        }
    }
    // 1 is not prime
    if lo == 0 && len > 0 {
        composite[0] = true;
    }
    composite
}

/// Integer square root.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.saturating_mul(r) > n {
        r -= 1;
    }
    while (r + 1).saturating_mul(r + 1) <= n {
        r += 1;
    }
    r
}

const PRIME_SUM_SEGMENT: u64 = 1 << 21;

/// Block-deterministic `sum of f(p)` over primes `lo < p <= hi`, streaming
/// segments so no full prime list is materialised.
pub fn sum_over_primes<F>(lo: u64, hi: u64, f: F) -> f64
where
    F: Fn(u64) -> f64 + Sync,
{
    if hi <= lo.max(1) {
        return 0.0;
    }
    let base = simple_primes(isqrt(hi));
    par::sum_f64_blocks(lo, hi, PRIME_SUM_SEGMENT, |a, b| {
        let composite = mark_composites(a, b, &base);
        let mut acc = par::KahanSum::default();
        for (i, &c) in composite.iter().enumerate() {
            if !c {
                let n = a + 1 + i as u64;
                if n >= 2 {
                    acc.add(f(n));
                }
            }
        }
        acc.value()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_prime_naive(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn table_matches_naive_primality() {
        let t = PrimeTable::up_to(1000);
        let naive: Vec<u64> = (2..=1000).filter(|&n| is_prime_naive(n)).collect();
        assert_eq!(t.primes(), naive.as_slice());
        assert_eq!(t.count_leq(100), 25);
        assert_eq!(t.primes()[0], 2);
    }

    #[test]
    fn exact_div_finds_multiplicity() {
        let d = ExactDiv::new(3);
        let mut v = 81 * 7;
        assert_eq!(d.divide_out(&mut v), 4);
        assert_eq!(v, 7);
        let mut w = 35;
        assert_eq!(d.divide_out(&mut w), 0);
        assert_eq!(w, 35);
    }

    #[test]
    fn mod_inverse_is_inverse() {
        for d in [3u64, 5, 17, 101, 4294967311, u64::MAX] {
            assert_eq!(d.wrapping_mul(mod_inv_u64(d)), 1);
        }
    }

    #[test]
    fn segment_marking_agrees_with_naive() {
        let base = simple_primes(isqrt(5000));
        let comp = mark_composites(977, 5000, &base);
        for (i, &c) in comp.iter().enumerate() {
            let n = 978 + i as u64;
            assert_eq!(!c, is_prime_naive(n), "n={n}");
        }
    }

    #[test]
    fn prime_stream_sum_counts_primes() {
        let count = sum_over_primes(0, 10_000, |_| 1.0);
        assert_eq!(count, 1229.0);
        let tail = sum_over_primes(9973, 10_000, |_| 1.0);
        assert_eq!(tail, 0.0); // 9973 is the largest prime <= 10^4
    }

    #[test]
    fn isqrt_exact() {
        for n in 0..2000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
        assert_eq!(isqrt(10_000_000_000), 100_000);
    }
}
