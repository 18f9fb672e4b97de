//! The smooth cutoff weight `W_κ`: identically 1 on `(0, 1]`, identically 0 on
//! `[1+κ, ∞)`, and a C^∞ transition in between built from `exp(-1/s)`.

use crate::error::{Error, Result};

/// Smooth transition weight with shoulder width `kappa`.
///
/// `W(t) = f(a)/(f(a)+f(b))` on `(1, 1+κ)` with `a = (1+κ-t)/κ`,
/// `b = (t-1)/κ`, and `f(s) = exp(-1/s)` for `s > 0`, else 0.
#[derive(Debug, Clone, Copy)]
pub struct BumpWeight {
    kappa: f64,
}

impl BumpWeight {
    pub fn new(kappa: f64) -> Result<Self> {
        if !(kappa > 0.0 && kappa < 1.0) {
            return Err(Error::Domain(format!("kappa must lie in (0,1), got {kappa}")));
        }
        Ok(BumpWeight { kappa })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t <= 1.0 {
            return 1.0;
        }
        if t >= 1.0 + self.kappa {
            return 0.0;
        }
        let a = (1.0 + self.kappa - t) / self.kappa;
        let b = (t - 1.0) / self.kappa;
        let fa = bump(a);
        let fb = bump(b);
        fa / (fa + fb)
    }
}

fn bump(s: f64) -> f64 {
    if s > 0.0 {
        (-1.0 / s).exp()
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_and_range() {
        let w = BumpWeight::new(0.1).unwrap();
        assert_eq!(w.eval(0.3), 1.0);
        assert_eq!(w.eval(1.0), 1.0);
        assert_eq!(w.eval(1.1), 0.0);
        assert_eq!(w.eval(5.0), 0.0);
        for i in 1..100 {
            let t = 1.0 + 0.1 * i as f64 / 100.0;
            let v = w.eval(t);
            assert!((0.0..=1.0).contains(&v), "W({t}) = {v}");
        }
    }

    #[test]
    fn monotone_on_shoulder() {
        let w = BumpWeight::new(0.25).unwrap();
        let mut prev = 1.0;
        for i in 0..=200 {
            let t = 1.0 + 0.25 * i as f64 / 200.0;
            let v = w.eval(t);
            assert!(v <= prev + 1e-15, "not nonincreasing at t={t}");
            prev = v;
        }
    }

    #[test]
    fn midpoint_is_half() {
        let w = BumpWeight::new(0.2).unwrap();
        assert!((w.eval(1.1) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_kappa() {
        assert!(BumpWeight::new(0.0).is_err());
        assert!(BumpWeight::new(1.5).is_err());
    }
}
