//! Deterministic block-structured reductions.
//!
//! Every parallel reduction in this crate splits its domain into blocks whose
//! boundaries depend only on the inputs, computes one partial result per
//! block, and folds the partials in block order. Totals are therefore
//! bit-identical for any number of rayon workers, and identical to the
//! sequential build (`--no-default-features`).

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use num_complex::Complex64;

/// Compensated accumulator (Kahan–Neumaier).
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated accumulator for complex values.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanComplex {
    re: KahanSum,
    im: KahanSum,
}

impl KahanComplex {
    pub fn add(&mut self, v: Complex64) {
        self.re.add(v.re);
        self.im.add(v.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Map `f` over the blocks `[lo, hi)` of size `block`, returning the partial
/// results in block order. `f` receives half-open bounds `(a, b)`.
pub fn map_blocks<T, F>(lo: u64, hi: u64, block: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync,
{
    assert!(block > 0, "block size must be positive");
    if hi <= lo {
        return Vec::new();
    }
    let n = (hi - lo).div_ceil(block);
    let bounds = move |i: u64| {
        let a = lo + i * block;
        (a, (a + block).min(hi))
    };
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .map(|i| {
                let (a, b) = bounds(i);
                f(a, b)
            })
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n)
            .map(|i| {
                let (a, b) = bounds(i);
                f(a, b)
            })
            .collect()
    }
}

/// Map `f` over indices `0..n`, preserving order.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Block-deterministic integer sum over `[lo, hi)`.
pub fn sum_u64_blocks<F>(lo: u64, hi: u64, block: u64, f: F) -> u64
where
    F: Fn(u64, u64) -> u64 + Sync,
{
    map_blocks(lo, hi, block, f).into_iter().sum()
}

/// Block-deterministic compensated float sum over `[lo, hi)`.
pub fn sum_f64_blocks<F>(lo: u64, hi: u64, block: u64, f: F) -> f64
where
    F: Fn(u64, u64) -> f64 + Sync,
{
    let parts = map_blocks(lo, hi, block, f);
    let mut acc = KahanSum::default();
    for p in parts {
        acc.add(p);
    }
    acc.value()
}

/// Block-deterministic compensated complex sum over `[lo, hi)`.
pub fn sum_c64_blocks<F>(lo: u64, hi: u64, block: u64, f: F) -> Complex64
where
    F: Fn(u64, u64) -> Complex64 + Sync,
{
    let parts = map_blocks(lo, hi, block, f);
    let mut acc = KahanComplex::default();
    for p in parts {
        acc.add(p);
    }
    acc.value()
}
