//! Composite Gauss–Legendre quadrature.
//!
//! Nodes and weights are computed by Newton iteration on the Legendre
//! recurrence, so no tabulated constants are needed; exactness on polynomials
//! up to degree `2n − 1` is checked in the tests.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::par::{self, KahanComplex};

/// A Gauss–Legendre rule on the reference interval `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("need at least 2 nodes, got {n}")));
        }
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n {
            // Tricomi initial guess, then Newton on P_n
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_and_deriv(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        nodes.reverse();
        weights.reverse();
        Ok(GaussLegendre { nodes, weights })
    }
}

/// Evaluate `(P_n(x), P_n'(x))` via the three-term recurrence.
fn legendre_and_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Quadrature settings for the contour integrals.
#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    /// Upper bound on the panel extent along the imaginary direction;
    /// the effective width is further capped at `0.5 / log x`.
    pub panel_max_width_t: f64,
    /// Gauss–Legendre nodes per panel (at least 8).
    pub nodes_per_panel: usize,
    /// Relative threshold below which far-tail panel blocks may be skipped
    /// using the a-priori triangle bound; 0 disables skipping.
    pub tail_cut: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            panel_max_width_t: f64::INFINITY,
            nodes_per_panel: 16,
            tail_cut: 0.0,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.panel_max_width_t > 0.0) {
            return Err(Error::Domain("panel width must be positive".into()));
        }
        if self.nodes_per_panel < 8 {
            return Err(Error::Domain(format!(
                "nodes_per_panel must be >= 8, got {}",
                self.nodes_per_panel
            )));
        }
        if self.tail_cut < 0.0 {
            return Err(Error::Domain("tail_cut must be >= 0".into()));
        }
        Ok(())
    }

    /// Panel width actually used for a problem with the given `log x`:
    /// no wider than half the oscillation scale of `x^{it}`.
    pub fn effective_width(&self, ln_x: f64) -> f64 {
        self.panel_max_width_t.min(0.5 / ln_x.max(1.0))
    }
}

const PANEL_BLOCK: u64 = 512;

/// `∫_a^b f(τ) dτ` for complex `f` over a real parameter, with uniform panels
/// of width at most `max_panel`. Panels are reduced block-deterministically.
pub fn integrate_param<F>(a: f64, b: f64, max_panel: f64, rule: &GaussLegendre, f: F) -> Complex64
where
    F: Fn(f64) -> Complex64 + Sync,
{
    if !(b > a) {
        return Complex64::new(0.0, 0.0);
    }
    let n_panels = ((b - a) / max_panel).ceil().max(1.0) as u64;
    let width = (b - a) / n_panels as f64;
    panel_sum(n_panels, rule, |j, k| {
        let left = a + j as f64 * width;
        let tau = left + 0.5 * width * (rule.nodes[k] + 1.0);
        f(tau)
    }) * (0.5 * width)
}

/// Same contract as [`integrate_param`] but over an explicit list of panel
/// boundaries (ascending, length >= 2). Used by arc segments whose natural
/// panel spacing is nonuniform.
pub fn integrate_panels<F>(boundaries: &[f64], rule: &GaussLegendre, f: F) -> Complex64
where
    F: Fn(f64) -> Complex64 + Sync,
{
    if boundaries.len() < 2 {
        return Complex64::new(0.0, 0.0);
    }
    let parts = par::map_blocks(0, (boundaries.len() - 1) as u64, PANEL_BLOCK, |lo, hi| {
        let mut acc = KahanComplex::default();
        for j in lo as usize..hi as usize {
            let (a, b) = (boundaries[j], boundaries[j + 1]);
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            let mut panel = Complex64::new(0.0, 0.0);
            for (k, &xk) in rule.nodes.iter().enumerate() {
                panel += rule.weights[k] * f(mid + half * xk);
            }
            acc.add(panel * half);
        }
        acc.value()
    });
    let mut acc = KahanComplex::default();
    for p in parts {
        acc.add(p);
    }
    acc.value()
}

fn panel_sum<F>(n_panels: u64, rule: &GaussLegendre, eval: F) -> Complex64
where
    F: Fn(u64, usize) -> Complex64 + Sync,
{
    let parts = par::map_blocks(0, n_panels, PANEL_BLOCK, |lo, hi| {
        let mut acc = KahanComplex::default();
        for j in lo..hi {
            let mut panel = Complex64::new(0.0, 0.0);
            for (k, &w) in rule.weights.iter().enumerate() {
                panel += w * eval(j, k);
            }
            acc.add(panel);
        }
        acc.value()
    });
    let mut acc = KahanComplex::default();
    for p in parts {
        acc.add(p);
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for n in [8, 12, 16, 24] {
            let r = GaussLegendre::new(n).unwrap();
            let s: f64 = r.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-14, "n={n}: {s}");
            // symmetric nodes
            for i in 0..n {
                assert!((r.nodes[i] + r.nodes[n - 1 - i]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn exact_on_polynomials() {
        let r = GaussLegendre::new(16).unwrap();
        // integrate x^k over [-1,1]: 0 for odd k, 2/(k+1) for even k
        for k in 0..=31u32 {
            let mut got = 0.0;
            for (x, w) in r.nodes.iter().zip(&r.weights) {
                got += w * x.powi(k as i32);
            }
            let expect = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            assert!((got - expect).abs() < 2e-14, "k={k}: {got} vs {expect}");
        }
    }

    #[test]
    fn oscillatory_integral_matches_closed_form() {
        let r = GaussLegendre::new(16).unwrap();
        // ∫_0^10 e^{iωτ} dτ = (e^{10iω} - 1)/(iω)
        let omega = 7.3;
        let f = |t: f64| Complex64::new(0.0, omega * t).exp();
        let got = integrate_param(0.0, 10.0, 0.04, &r, f);
        let i = Complex64::new(0.0, 1.0);
        let expect = ((i * omega * 10.0).exp() - 1.0) / (i * omega);
        assert!((got - expect).norm() < 1e-12);
    }

    #[test]
    fn panel_list_matches_uniform() {
        let r = GaussLegendre::new(16).unwrap();
        let f = |t: f64| Complex64::new((t * t).sin(), t.cos());
        let uniform = integrate_param(1.0, 4.0, 0.1, &r, f);
        let bounds: Vec<f64> = (0..=30).map(|i| 1.0 + 0.1 * i as f64).collect();
        let listed = integrate_panels(&bounds, &r, f);
        assert!((uniform - listed).norm() < 1e-13);
    }

    #[test]
    fn config_validation() {
        assert!(QuadConfig::default().validate().is_ok());
        let bad = QuadConfig {
            nodes_per_panel: 4,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
