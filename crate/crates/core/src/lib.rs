//! Numerical machinery for counting smooth (friable) integers in long and
//! short intervals.
//!
//! A positive integer is *y-smooth* when all of its prime factors are at most
//! `y`. This crate provides:
//!
//! * exact integer-side ground truth: segmented sieves for smooth counts,
//!   prime counts, von Mangoldt sums, and an inclusion-exclusion oracle
//!   ([`sieve`]);
//! * the smooth zeta function `ζ(s, y)` and relatives, evaluated in the log
//!   domain with compensated summation ([`zeta`]);
//! * the saddle point `α(x, y)` minimising `x^σ ζ(σ, y)`, with the Rankin
//!   upper bound ([`saddle`]);
//! * piecewise contours (saddle vertical, exponential arcs, per-zero detours)
//!   and Gauss–Legendre quadrature of Perron-type integrals ([`contour`]);
//! * the large-`y` density estimator `g(x, y)` built from primes in short
//!   intervals ([`hildebrand`]);
//! * zeta-zero datasets and the explicit formula for Chebyshev `ψ` ([`zeros`]).
//!
//! All parallel reductions are block-deterministic: results are bit-identical
//! for any worker count, and identical to the sequential build obtained with
//! `--no-default-features`.

pub mod contour;
pub mod error;
pub mod hildebrand;
pub mod par;
pub mod primes;
pub mod quad;
pub mod saddle;
pub mod sieve;
pub mod weight;
pub mod zeros;
pub mod zeta;

pub use error::{Error, Result};
pub use primes::PrimeTable;
pub use sieve::{SieveBudget, SieveStrategy};
