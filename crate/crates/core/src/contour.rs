//! Piecewise integration contours in the strip `0 < Re(s) <= α` and the
//! numerical Perron-type integrals evaluated along them.
//!
//! A contour is assembled from two kinds of pieces: vertical lines, and
//! exponential arcs `δ ↦ (1 − c·δ, γ ± A·y^δ)` whose imaginary part grows
//! geometrically in `y`. The saddle path has a vertical piece at `Re(s) = α`
//! flanked by arcs with `c = 1`; each zero detour has a vertical piece at
//! `Re(s) = 1 − (1−ε)ν` flanked by arcs with `c = 1−ε`. The merged path takes
//! the pointwise-rightmost cover at every height, defaulting to the line
//! `Re(s) = (1+ε)/2`.
//!
//! Quadrature along vertical lines uses a rotating-phasor recursion: within a
//! fixed block of panels, `p^{-it}` advances by one complex multiplication per
//! panel, with a fresh `exp` at each block start. Blocks are reduced in order,
//! so results are independent of the worker count.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::par::{self, KahanComplex};
use crate::primes::PrimeTable;
use crate::quad::{integrate_panels, GaussLegendre, QuadConfig};
use crate::saddle::{self, UParam};
use crate::zeta::{log_zeta_smooth, EvalConfig};

/// Real-part slope of an exponential arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeVariant {
    /// `Re(s) = 1 − δ` (saddle arcs).
    Unit,
    /// `Re(s) = 1 − (1−ε)δ` (zero-detour arcs).
    Damped,
}

/// One piecewise-smooth piece of a contour, traversed in ascending `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathSegment {
    Vertical {
        sigma: f64,
        t_lo: f64,
        t_hi: f64,
    },
    ExpArc {
        eps: f64,
        gamma: f64,
        amp: f64,
        /// +1 for the branch above `gamma`, −1 below.
        sign: f64,
        slope: SlopeVariant,
        delta_lo: f64,
        delta_hi: f64,
        ln_y: f64,
    },
}

impl PathSegment {
    fn slope_value(eps: f64, slope: SlopeVariant) -> f64 {
        match slope {
            SlopeVariant::Unit => 1.0,
            SlopeVariant::Damped => 1.0 - eps,
        }
    }

    /// Point of an arc at parameter `delta`.
    pub fn arc_point(&self, delta: f64) -> Complex64 {
        match *self {
            PathSegment::ExpArc {
                eps,
                gamma,
                amp,
                sign,
                slope,
                ln_y,
                ..
            } => Complex64::new(
                1.0 - Self::slope_value(eps, slope) * delta,
                gamma + sign * amp * (delta * ln_y).exp(),
            ),
            PathSegment::Vertical { .. } => panic!("arc_point on a vertical segment"),
        }
    }

    /// Derivative `ds/dδ` of an arc.
    fn arc_deriv(&self, delta: f64) -> Complex64 {
        match *self {
            PathSegment::ExpArc {
                eps,
                amp,
                sign,
                slope,
                ln_y,
                ..
            } => Complex64::new(
                -Self::slope_value(eps, slope),
                sign * amp * ln_y * (delta * ln_y).exp(),
            ),
            PathSegment::Vertical { .. } => panic!("arc_deriv on a vertical segment"),
        }
    }

    /// Endpoints in traversal order (ascending `t`).
    pub fn endpoints(&self) -> (Complex64, Complex64) {
        match *self {
            PathSegment::Vertical { sigma, t_lo, t_hi } => (
                Complex64::new(sigma, t_lo),
                Complex64::new(sigma, t_hi),
            ),
            PathSegment::ExpArc {
                sign,
                delta_lo,
                delta_hi,
                ..
            } => {
                if sign > 0.0 {
                    (self.arc_point(delta_lo), self.arc_point(delta_hi))
                } else {
                    (self.arc_point(delta_hi), self.arc_point(delta_lo))
                }
            }
        }
    }

    /// Covered `t` interval.
    pub fn t_span(&self) -> (f64, f64) {
        let (a, b) = self.endpoints();
        (a.im, b.im)
    }

    /// Real part at height `t` (must lie inside the span).
    pub fn sigma_at(&self, t: f64) -> f64 {
        match *self {
            PathSegment::Vertical { sigma, .. } => sigma,
            PathSegment::ExpArc {
                eps,
                gamma,
                amp,
                slope,
                ln_y,
                ..
            } => {
                let delta = ((t - gamma).abs() / amp).ln() / ln_y;
                1.0 - Self::slope_value(eps, slope) * delta
            }
        }
    }
}

/// Ordered, connected sequence of segments.
#[derive(Debug, Clone)]
pub struct ContourPath {
    pub segments: Vec<PathSegment>,
    pub eps: f64,
    /// Height cutoff the path was built for; `None` for unclipped paths.
    pub h_limit: Option<f64>,
}

impl ContourPath {
    /// `(t_min, t_max)` of the whole path.
    pub fn t_range(&self) -> (f64, f64) {
        let lo = self.segments.first().map(|s| s.t_span().0).unwrap_or(0.0);
        let hi = self.segments.last().map(|s| s.t_span().1).unwrap_or(0.0);
        (lo, hi)
    }

    /// Real part at height `t`, if covered.
    pub fn sigma_at(&self, t: f64) -> Option<f64> {
        let idx = self
            .segments
            .partition_point(|s| s.t_span().1 < t);
        let seg = self.segments.get(idx)?;
        let (lo, hi) = seg.t_span();
        if t < lo - 1e-9 || t > hi + 1e-9 {
            return None;
        }
        Some(seg.sigma_at(t.clamp(lo, hi)))
    }

    /// Uniform `t, sigma` samples for export.
    pub fn sample_polyline(&self, n: usize) -> Vec<(f64, f64)> {
        let (lo, hi) = self.t_range();
        (0..n)
            .map(|i| {
                let t = lo + (hi - lo) * i as f64 / (n.max(2) - 1) as f64;
                (t, self.sigma_at(t).unwrap_or(f64::NAN))
            })
            .collect()
    }

    /// Structural checks: connected in order, continuous junctions, real
    /// parts inside `[(1+ε)/2, sigma_cap]`.
    pub fn validate(&self, sigma_cap: f64) -> Result<()> {
        const TOL: f64 = 1e-12;
        if self.segments.is_empty() {
            return Err(Error::Domain("empty contour".into()));
        }
        let mut prev_end: Option<Complex64> = None;
        for seg in &self.segments {
            let (a, b) = seg.endpoints();
            if !(a.im <= b.im + TOL) {
                return Err(Error::Domain(format!("segment travels downward: {seg:?}")));
            }
            if let Some(pe) = prev_end {
                if (pe - a).norm() > TOL.max(1e-12 * pe.norm()) {
                    return Err(Error::Domain(format!(
                        "junction gap {} between segments",
                        (pe - a).norm()
                    )));
                }
            }
            for p in [a, b] {
                if !(p.re.is_finite() && p.im.is_finite()) {
                    return Err(Error::Domain("non-finite endpoint".into()));
                }
                let lo = (1.0 + self.eps) / 2.0;
                if p.re < lo - 1e-9 || p.re > sigma_cap + 1e-9 {
                    return Err(Error::Domain(format!(
                        "real part {} outside [{lo}, {sigma_cap}]",
                        p.re
                    )));
                }
            }
            prev_end = Some(b);
        }
        Ok(())
    }
}

/// Zero ordinate paired with its distance-from-1 parameter `ν` (the zero sits
/// at `1 − ν + iγ`). Dataset zeros use `ν = 1/2`; smaller `ν` values are
/// synthetic and exercise the detour geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroWithNu {
    pub gamma: f64,
    pub nu: f64,
}

/// Width floor `c1 / ((log x)^{2/3} (log log x)^{1/3})` of the zero-free
/// region used for containment reporting.
pub fn lambda_floor(x: f64, c1: f64) -> f64 {
    let lx = x.ln();
    c1 / (lx.powf(2.0 / 3.0) * lx.ln().max(1.0).powf(1.0 / 3.0))
}

/// Saddle-path parameters shared by builders.
struct SaddleGeometry {
    alpha: f64,
    t0: f64,
    amp: f64,
    delta_lo: f64,
    delta_hi: f64,
    ln_y: f64,
}

fn saddle_geometry(x: f64, y: u64, eps: f64, table: &PrimeTable) -> Result<SaddleGeometry> {
    if !(eps > 0.0 && eps < 0.25) {
        return Err(Error::Domain(format!("eps must lie in (0, 1/4), got {eps}")));
    }
    let alpha = saddle::saddle_point(x, y, 1e-10, table)?.alpha;
    let ln_y = (y as f64).ln();
    let u = UParam::new(x, y).0;
    let t0 = (u + 1.0).ln() / (eps * eps * ln_y);
    let delta_lo = 1.0 - alpha;
    let delta_hi = (1.0 - eps) / 2.0;
    if delta_lo >= delta_hi {
        return Err(Error::Domain(format!(
            "degenerate saddle contour: 1 - alpha = {delta_lo} >= (1-eps)/2 = {delta_hi}"
        )));
    }
    // amp * y^(1-alpha) = t0: the arc meets the vertical at its endpoint
    let amp = t0 * (-(delta_lo) * ln_y).exp();
    Ok(SaddleGeometry {
        alpha,
        t0,
        amp,
        delta_lo,
        delta_hi,
        ln_y,
    })
}

/// The saddle contour: vertical piece at `Re(s) = α` for `|t| <= t0`, glued
/// to exponential arcs `δ ↦ (1 − δ, ±amp·y^δ)` for `δ ∈ [1−α, (1−ε)/2]`.
pub fn gamma0_path(x: f64, y: u64, eps: f64, table: &PrimeTable) -> Result<ContourPath> {
    let g = saddle_geometry(x, y, eps, table)?;
    let arc = |sign: f64| PathSegment::ExpArc {
        eps,
        gamma: 0.0,
        amp: g.amp,
        sign,
        slope: SlopeVariant::Unit,
        delta_lo: g.delta_lo,
        delta_hi: g.delta_hi,
        ln_y: g.ln_y,
    };
    let path = ContourPath {
        segments: vec![
            arc(-1.0),
            PathSegment::Vertical {
                sigma: g.alpha,
                t_lo: -g.t0,
                t_hi: g.t0,
            },
            arc(1.0),
        ],
        eps,
        h_limit: None,
    };
    path.validate(g.alpha.max((1.0 + eps) / 2.0))?;
    Ok(path)
}

/// Detour around a zero at `1 − ν + iγ`: vertical piece at
/// `Re(s) = 1 − (1−ε)ν` for `|t − γ| <= 10 y^ν`, glued to arcs
/// `δ ↦ (1 − (1−ε)δ, γ ± 10 y^δ)` for `δ ∈ [ν, 1/2]`.
pub fn gamma_rho_path(gamma_ord: f64, nu: f64, y: u64, eps: f64) -> Result<ContourPath> {
    if !(nu > 0.0 && nu <= 0.5) {
        return Err(Error::Domain(format!("nu must lie in (0, 1/2], got {nu}")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Domain(format!("eps must lie in (0, 1), got {eps}")));
    }
    let ln_y = (y as f64).ln();
    let reach = 10.0 * (nu * ln_y).exp();
    let sigma = 1.0 - (1.0 - eps) * nu;
    let mut segments = Vec::new();
    let arc = |sign: f64| PathSegment::ExpArc {
        eps,
        gamma: gamma_ord,
        amp: 10.0,
        sign,
        slope: SlopeVariant::Damped,
        delta_lo: nu,
        delta_hi: 0.5,
        ln_y,
    };
    if nu < 0.5 {
        segments.push(arc(-1.0));
    }
    segments.push(PathSegment::Vertical {
        sigma,
        t_lo: gamma_ord - reach,
        t_hi: gamma_ord + reach,
    });
    if nu < 0.5 {
        segments.push(arc(1.0));
    }
    Ok(ContourPath {
        segments,
        eps,
        h_limit: None,
    })
}

// ---------------------------------------------------------------------------
// Merged contour: pointwise maximum over the saddle path, all zero detours,
// and the default line.

#[derive(Debug, Clone, Copy, PartialEq)]
enum PieceKind {
    Default,
    SaddleVertical,
    SaddleArc { sign: f64 },
    RhoVertical { zero: usize },
    RhoArc { zero: usize, sign: f64 },
}

/// One candidate curve piece with its height span and σ formula.
#[derive(Debug, Clone, Copy)]
struct CurvePiece {
    kind: PieceKind,
    t_lo: f64,
    t_hi: f64,
    /// ordering rank for ties: Default < Saddle < Rho (lower wins ties)
    rank: u32,
}

struct MergeContext {
    eps: f64,
    default_sigma: f64,
    saddle: SaddleGeometry,
    /// mirrored zero centres with ν (one entry per supplied zero and sign)
    zeros: Vec<(f64, f64)>,
    ln_y: f64,
}

impl MergeContext {
    fn sigma_of(&self, piece: &CurvePiece, t: f64) -> f64 {
        match piece.kind {
            PieceKind::Default => self.default_sigma,
            PieceKind::SaddleVertical => self.saddle.alpha,
            PieceKind::SaddleArc { .. } => {
                let delta = (t.abs() / self.saddle.amp).ln() / self.ln_y;
                1.0 - delta
            }
            PieceKind::RhoVertical { zero } => {
                let (_, nu) = self.zeros[zero];
                1.0 - (1.0 - self.eps) * nu
            }
            PieceKind::RhoArc { zero, .. } => {
                let (gc, _) = self.zeros[zero];
                let delta = ((t - gc).abs() / 10.0).ln() / self.ln_y;
                1.0 - (1.0 - self.eps) * delta
            }
        }
    }
}

/// Merge the saddle path with detours for every supplied zero (mirrored to
/// `±γ`), taking the rightmost cover at every height in `[-H, H]` and the
/// default line `Re(s) = (1+ε)/2` where nothing else reaches. Returns a
/// minimal ordered segment list.
pub fn build_gamma(
    zeros: &[ZeroWithNu],
    x: f64,
    y: u64,
    eps: f64,
    h_cap: f64,
    table: &PrimeTable,
) -> Result<ContourPath> {
    if !(h_cap > 0.0 && h_cap <= x) {
        return Err(Error::Domain(format!("need 0 < H <= x, got H = {h_cap}")));
    }
    for w in zeros.windows(2) {
        if w[0].gamma > w[1].gamma {
            return Err(Error::Domain("zero list must be sorted by ordinate".into()));
        }
    }
    let saddle = saddle_geometry(x, y, eps, table)?;
    let ln_y = (y as f64).ln();
    let mut mirrored = Vec::with_capacity(zeros.len() * 2);
    for z in zeros {
        if !(z.nu > 0.0 && z.nu <= 0.5) {
            return Err(Error::Domain(format!("nu = {} outside (0, 1/2]", z.nu)));
        }
        if !(z.gamma > 0.0) {
            return Err(Error::Domain(format!("ordinate {} must be positive", z.gamma)));
        }
        mirrored.push((-z.gamma, z.nu));
        mirrored.push((z.gamma, z.nu));
    }
    mirrored.sort_by(|a, b| a.0.total_cmp(&b.0));
    let ctx = MergeContext {
        eps,
        default_sigma: (1.0 + eps) / 2.0,
        saddle,
        zeros: mirrored,
        ln_y,
    };

    let clip = |lo: f64, hi: f64| (lo.max(-h_cap), hi.min(h_cap));
    let mut pieces = vec![CurvePiece {
        kind: PieceKind::Default,
        t_lo: -h_cap,
        t_hi: h_cap,
        rank: 0,
    }];
    let g = &ctx.saddle;
    let t_arc_max = g.amp * (g.delta_hi * ln_y).exp();
    for (kind, lo, hi) in [
        (PieceKind::SaddleArc { sign: -1.0 }, -t_arc_max, -g.t0),
        (PieceKind::SaddleVertical, -g.t0, g.t0),
        (PieceKind::SaddleArc { sign: 1.0 }, g.t0, t_arc_max),
    ] {
        let (lo, hi) = clip(lo, hi);
        if lo < hi {
            pieces.push(CurvePiece {
                kind,
                t_lo: lo,
                t_hi: hi,
                rank: 1,
            });
        }
    }
    for (zi, &(gc, nu)) in ctx.zeros.iter().enumerate() {
        let reach_v = 10.0 * (nu * ln_y).exp();
        let reach_a = 10.0 * (0.5 * ln_y).exp();
        for (kind, lo, hi) in [
            (PieceKind::RhoArc { zero: zi, sign: -1.0 }, gc - reach_a, gc - reach_v),
            (PieceKind::RhoVertical { zero: zi }, gc - reach_v, gc + reach_v),
            (PieceKind::RhoArc { zero: zi, sign: 1.0 }, gc + reach_v, gc + reach_a),
        ] {
            let (lo, hi) = clip(lo, hi);
            if lo < hi {
                pieces.push(CurvePiece {
                    kind,
                    t_lo: lo,
                    t_hi: hi,
                    rank: 2 + zi as u32,
                });
            }
        }
    }

    // Event heights: every piece boundary. Between consecutive events the
    // active piece set is constant and each σ formula is smooth and monotone
    // on at most two intervals, so sampled winner changes can be bisected.
    let mut events: Vec<f64> = pieces.iter().flat_map(|p| [p.t_lo, p.t_hi]).collect();
    events.push(0.0);
    events.sort_by(f64::total_cmp);
    events.dedup_by(|a, b| (*a - *b).abs() < 1e-13);

    let winner_at = |t: f64| -> usize {
        let mut best = 0usize;
        let mut best_sigma = f64::NEG_INFINITY;
        let mut best_rank = u32::MAX;
        for (i, p) in pieces.iter().enumerate() {
            if t < p.t_lo || t > p.t_hi {
                continue;
            }
            let s = ctx.sigma_of(p, t);
            if s > best_sigma + 1e-14 || (s >= best_sigma - 1e-14 && p.rank < best_rank) {
                if s > best_sigma {
                    best_sigma = s;
                }
                best = i;
                best_rank = p.rank;
            }
        }
        best
    };

    // Sweep each event interval, refining winner changes by bisection.
    const SAMPLES: usize = 48;
    let mut runs: Vec<(f64, f64, usize)> = Vec::new();
    for w in events.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b - a < 1e-13 {
            continue;
        }
        let mut run_start = a;
        let offset = (b - a) * 1e-9;
        let mut cur = winner_at(a + offset);
        for i in 1..=SAMPLES {
            let t = a + (b - a) * i as f64 / SAMPLES as f64;
            let probe = if i == SAMPLES { b - offset } else { t };
            let wnr = winner_at(probe);
            if wnr != cur {
                // bisect the change point
                let mut lo = a + (b - a) * (i as f64 - 1.0) / SAMPLES as f64;
                let mut hi = probe;
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    if winner_at(mid) == cur {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                let cross = 0.5 * (lo + hi);
                runs.push((run_start, cross, cur));
                run_start = cross;
                cur = winner_at(hi);
            }
        }
        runs.push((run_start, b, cur));
    }
    // merge consecutive runs of the same piece
    let mut merged: Vec<(f64, f64, usize)> = Vec::new();
    for r in runs {
        if r.1 - r.0 < 1e-12 {
            continue;
        }
        match merged.last_mut() {
            Some(last) if last.2 == r.2 && (last.1 - r.0).abs() < 1e-9 => last.1 = r.1,
            _ => merged.push(r),
        }
    }

    let mut segments = Vec::with_capacity(merged.len());
    for (ta, tb, pi) in merged {
        let piece = &pieces[pi];
        let seg = match piece.kind {
            PieceKind::Default => PathSegment::Vertical {
                sigma: ctx.default_sigma,
                t_lo: ta,
                t_hi: tb,
            },
            PieceKind::SaddleVertical => PathSegment::Vertical {
                sigma: g.alpha,
                t_lo: ta,
                t_hi: tb,
            },
            PieceKind::SaddleArc { sign } => {
                let d = |t: f64| ((t.abs() / g.amp).ln() / ln_y).clamp(g.delta_lo, g.delta_hi);
                let (d1, d2) = (d(ta), d(tb));
                PathSegment::ExpArc {
                    eps,
                    gamma: 0.0,
                    amp: g.amp,
                    sign,
                    slope: SlopeVariant::Unit,
                    delta_lo: d1.min(d2),
                    delta_hi: d1.max(d2),
                    ln_y,
                }
            }
            PieceKind::RhoVertical { zero } => {
                let (_, nu) = ctx.zeros[zero];
                PathSegment::Vertical {
                    sigma: 1.0 - (1.0 - eps) * nu,
                    t_lo: ta,
                    t_hi: tb,
                }
            }
            PieceKind::RhoArc { zero, sign } => {
                let (gc, nu) = ctx.zeros[zero];
                let d = |t: f64| (((t - gc).abs() / 10.0).ln() / ln_y).clamp(nu, 0.5);
                let (d1, d2) = (d(ta), d(tb));
                PathSegment::ExpArc {
                    eps,
                    gamma: gc,
                    amp: 10.0,
                    sign,
                    slope: SlopeVariant::Damped,
                    delta_lo: d1.min(d2),
                    delta_hi: d1.max(d2),
                    ln_y,
                }
            }
        };
        segments.push(seg);
    }

    Ok(ContourPath {
        segments,
        eps,
        h_limit: Some(h_cap),
    })
}

// ---------------------------------------------------------------------------
// Integrals.

/// `((x+h)^s − x^s)/s`, evaluated as `x^s ((1+h/x)^s − 1)/s` with a series
/// for the inner factor when `|s log(1+h/x)|` is small.
pub fn taylor_kernel(s: Complex64, x: f64, h: f64) -> Result<Complex64> {
    if s.norm() == 0.0 {
        return Err(Error::Domain("taylor kernel undefined at s = 0".into()));
    }
    if !(x > 0.0 && h >= 0.0) {
        return Err(Error::Domain(format!("need x > 0, h >= 0, got ({x}, {h})")));
    }
    let w = s * (h / x).ln_1p();
    let em = if w.norm() < 1e-4 {
        // e^w − 1 = w (1 + w/2 + w²/6 + w³/24 + w⁴/120) + O(w^6)
        let w2 = w * w;
        w * (1.0 + w * 0.5 + w2 / 6.0 + w2 * w / 24.0 + w2 * w2 / 120.0)
    } else {
        w.exp() - 1.0
    };
    Ok((s * x.ln()).exp() * em / s)
}

struct LineIntegrand<'a> {
    alpha: f64,
    primes_neg_alpha: Vec<f64>,
    logs: &'a [f64],
    rule: GaussLegendre,
}

const LINE_BLOCK_PANELS: u64 = 1024;

/// `∫ ζ(σ+it, y) · kernel(σ+it) i dt` over `t ∈ [t_lo, t_hi]` on the vertical
/// line `σ = alpha`, with phasor recursion for the Euler product.
fn zeta_line_integral<K>(
    alpha: f64,
    t_lo: f64,
    t_hi: f64,
    y: u64,
    table: &PrimeTable,
    ln_x: f64,
    q: &QuadConfig,
    kernel: K,
) -> Result<Complex64>
where
    K: Fn(Complex64) -> Complex64 + Sync,
{
    q.validate()?;
    if !(t_hi > t_lo) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let (_, logs) = table.slice_leq(y)?;
    let rule = GaussLegendre::new(q.nodes_per_panel)?;
    let ctx = LineIntegrand {
        alpha,
        primes_neg_alpha: logs.iter().map(|&lp| (-alpha * lp).exp()).collect(),
        logs,
        rule,
    };
    let w_eff = q.effective_width(ln_x);
    let n_panels = ((t_hi - t_lo) / w_eff).ceil().max(1.0) as u64;
    let width = (t_hi - t_lo) / n_panels as f64;
    let k_nodes = ctx.rule.nodes.len();

    // per-prime, per-node phase factors within one panel
    let offsets: Vec<f64> = ctx
        .rule
        .nodes
        .iter()
        .map(|&xk| 0.5 * width * (xk + 1.0))
        .collect();
    let node_factors: Vec<Complex64> = ctx
        .logs
        .iter()
        .enumerate()
        .flat_map(|(pi, &lp)| {
            let pa = ctx.primes_neg_alpha[pi];
            offsets
                .iter()
                .map(move |&off| pa * Complex64::from_polar(1.0, -off * lp))
        })
        .collect();
    let steps: Vec<Complex64> = ctx
        .logs
        .iter()
        .map(|&lp| Complex64::from_polar(1.0, -width * lp))
        .collect();

    let parts = par::map_blocks(0, n_panels, LINE_BLOCK_PANELS, |blo, bhi| {
        let t_start = t_lo + blo as f64 * width;
        let mut rot: Vec<Complex64> = ctx
            .logs
            .iter()
            .map(|&lp| Complex64::from_polar(1.0, -t_start * lp))
            .collect();
        let mut acc = KahanComplex::default();
        let mut prod = vec![Complex64::new(0.0, 0.0); k_nodes];
        for j in blo..bhi {
            let panel_lo = t_lo + j as f64 * width;
            prod.fill(Complex64::new(1.0, 0.0));
            for (pi, r) in rot.iter_mut().enumerate() {
                let base = pi * k_nodes;
                for (k, pk) in prod.iter_mut().enumerate() {
                    let w = *r * node_factors[base + k];
                    *pk *= Complex64::new(1.0 - w.re, -w.im);
                }
                *r *= steps[pi];
            }
            let mut panel = Complex64::new(0.0, 0.0);
            for k in 0..k_nodes {
                let s = Complex64::new(ctx.alpha, panel_lo + offsets[k]);
                let zeta = prod[k].finv();
                panel += ctx.rule.weights[k] * zeta * kernel(s);
            }
            acc.add(panel);
        }
        acc.value()
    });
    let mut acc = KahanComplex::default();
    for p in parts {
        acc.add(p);
    }
    // ds = i dt; each panel integral carries width/2 from the node map
    Ok(Complex64::new(0.0, 1.0) * acc.value() * (0.5 * width))
}

/// `∫ f(s) ds` along an arbitrary contour path, panelised so the `t` extent
/// of every panel stays below the oscillation scale `0.5 / log x`.
pub fn integrate_path<F>(
    path: &ContourPath,
    q: &QuadConfig,
    ln_x: f64,
    f: F,
) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    q.validate()?;
    let rule = GaussLegendre::new(q.nodes_per_panel)?;
    let w_eff = q.effective_width(ln_x);
    let mut total = KahanComplex::default();
    for seg in &path.segments {
        match *seg {
            PathSegment::Vertical { sigma, t_lo, t_hi } => {
                let v = crate::quad::integrate_param(t_lo, t_hi, w_eff, &rule, |t| {
                    f(Complex64::new(sigma, t))
                });
                total.add(Complex64::new(0.0, 1.0) * v);
            }
            PathSegment::ExpArc {
                sign,
                delta_lo,
                delta_hi,
                amp,
                ln_y,
                ..
            } => {
                // panel boundaries in δ chosen so Δt <= w_eff per panel
                let mut bounds = vec![delta_lo];
                let mut d = delta_lo;
                while d < delta_hi {
                    let t_here = amp * (d * ln_y).exp();
                    let dd = (w_eff / (ln_y * t_here)).min(0.02).max(1e-9);
                    d = (d + dd).min(delta_hi);
                    bounds.push(d);
                }
                let v = integrate_panels(&bounds, &rule, |delta| {
                    f(seg.arc_point(delta)) * seg.arc_deriv(delta)
                });
                // ascending-t traversal runs δ downward on the lower branch
                total.add(if sign > 0.0 { v } else { -v });
            }
        }
    }
    Ok(total.value())
}

/// Numerical Perron count: real part of
/// `(1/2πi) ∫_{α−iH}^{α+iH} ζ(s,y) ((x+h)^s − x^s)/s ds`,
/// computed over `t >= 0` and doubled by conjugate symmetry.
pub fn perron_count(
    x: f64,
    h: f64,
    y: u64,
    h_cap: f64,
    q: &QuadConfig,
    table: &PrimeTable,
) -> Result<f64> {
    let alpha = perron_checks(x, h_cap, y, table)?;
    let half = zeta_line_integral(alpha, 0.0, h_cap, y, table, x.ln(), q, |s| {
        taylor_kernel(s, x, h).unwrap_or_default()
    })?;
    // half = i∫_0^H f dt; the symmetric full line gives Re(∫_0^H f dt)/π
    Ok(half.im / std::f64::consts::PI)
}

/// Full-line Perron integral as a complex number; the imaginary part is a
/// symmetry diagnostic and should vanish.
pub fn perron_count_full(
    x: f64,
    h: f64,
    y: u64,
    h_cap: f64,
    q: &QuadConfig,
    table: &PrimeTable,
) -> Result<Complex64> {
    let alpha = perron_checks(x, h_cap, y, table)?;
    let full = zeta_line_integral(alpha, -h_cap, h_cap, y, table, x.ln(), q, |s| {
        taylor_kernel(s, x, h).unwrap_or_default()
    })?;
    Ok(full / Complex64::new(0.0, 2.0 * std::f64::consts::PI))
}

fn perron_checks(x: f64, h_cap: f64, y: u64, table: &PrimeTable) -> Result<f64> {
    if !(h_cap >= 2.0 && h_cap <= x) {
        return Err(Error::Domain(format!("need 2 <= H <= x, got H = {h_cap}")));
    }
    Ok(saddle::saddle_point(x, y, 1e-10, table)?.alpha)
}

/// Outcome of the main-term functional: the real value plus the imaginary
/// residue of the full-path quadrature (a consistency diagnostic).
#[derive(Debug, Clone, Copy)]
pub struct FthetaResult {
    pub value: f64,
    pub imag_residual: f64,
}

/// The `h`-independent main-term functional
/// `f(x, y) = (1/2πi x) ∫ ζ(s,y) x^s ds` over the full saddle path
/// (vertical piece and both arcs).
pub fn f_theta(
    x: f64,
    y: u64,
    eps: f64,
    q: &QuadConfig,
    table: &PrimeTable,
) -> Result<FthetaResult> {
    let path = gamma0_path(x, y, eps, table)?;
    let ln_x = x.ln();
    let cfg = EvalConfig::new(y);
    let mut total = KahanComplex::default();
    for seg in &path.segments {
        match *seg {
            PathSegment::Vertical { sigma, t_lo, t_hi } => {
                let v = zeta_line_integral(sigma, t_lo, t_hi, y, table, ln_x, q, |s| {
                    (s * ln_x).exp()
                })?;
                total.add(v);
            }
            _ => {
                let single = ContourPath {
                    segments: vec![*seg],
                    eps,
                    h_limit: None,
                };
                let v = integrate_path(&single, q, ln_x, |s| {
                    match log_zeta_smooth(s, &cfg, table) {
                        Ok(lz) => (lz + s * ln_x).exp(),
                        Err(_) => Complex64::new(0.0, 0.0),
                    }
                })?;
                total.add(v);
            }
        }
    }
    let res = total.value() / Complex64::new(0.0, 2.0 * std::f64::consts::PI) / x;
    Ok(FthetaResult {
        value: res.re,
        imag_residual: res.im,
    })
}

/// `(1/2πi) ∫ ζ(s,y) x^s ds` over the short vertical piece
/// `|t| <= 1/log y` at `Re(s) = α`; approximates `α Ψ(x, y)`.
pub fn near_axis_integral(x: f64, y: u64, q: &QuadConfig, table: &PrimeTable) -> Result<f64> {
    let alpha = saddle::saddle_point(x, y, 1e-10, table)?.alpha;
    let reach = 1.0 / (y as f64).ln();
    let ln_x = x.ln();
    let half = zeta_line_integral(alpha, 0.0, reach, y, table, ln_x, q, |s| (s * ln_x).exp())?;
    Ok(half.im / std::f64::consts::PI)
}

/// Full-interval variant of [`near_axis_integral`] with the imaginary
/// residue preserved.
pub fn near_axis_integral_full(
    x: f64,
    y: u64,
    q: &QuadConfig,
    table: &PrimeTable,
) -> Result<Complex64> {
    let alpha = saddle::saddle_point(x, y, 1e-10, table)?.alpha;
    let reach = 1.0 / (y as f64).ln();
    let ln_x = x.ln();
    let full =
        zeta_line_integral(alpha, -reach, reach, y, table, ln_x, q, |s| (s * ln_x).exp())?;
    Ok(full / Complex64::new(0.0, 2.0 * std::f64::consts::PI))
}
