//! Gauss–Legendre panels and the semi-infinite oscillatory integral.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::epsilon::accelerate_sequence;
use crate::error::{Error, Result};
use crate::special::j0_zeros;

/// Gauss–Legendre nodes and weights on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F>(&self, a: f64, b: f64, mut f: F) -> Result<Complex64>
    where
        F: FnMut(f64) -> Result<Complex64>,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x)?;
        }
        Ok(acc * half)
    }

    /// Real-valued convenience wrapper.
    pub fn integrate_real<F>(&self, a: f64, b: f64, mut f: F) -> f64
    where
        F: FnMut(f64) -> f64,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

/// P_n(x) and P_n'(x).
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OscillatoryQuadConfig {
    pub panels_before_extrapolation: usize,
    pub max_panels: usize,
    /// Gauss–Legendre nodes per panel.
    pub panel_rule: usize,
    pub tail_rel_tol: f64,
    /// Maximum bisection depth inside one panel.
    pub max_refinement: usize,
}

impl Default for OscillatoryQuadConfig {
    fn default() -> Self {
        Self {
            panels_before_extrapolation: 12,
            max_panels: 64,
            panel_rule: 16,
            tail_rel_tol: 1e-9,
            max_refinement: 12,
        }
    }
}

impl OscillatoryQuadConfig {
    pub fn validate(&self) -> Result<()> {
        if self.panels_before_extrapolation < 4 {
            return Err(Error::Config(
                "quadrature.panels_before_extrapolation must be >= 4".into(),
            ));
        }
        if self.max_panels == 0 {
            return Err(Error::Config("quadrature.max_panels must be >= 1".into()));
        }
        if self.panel_rule < 8 {
            return Err(Error::Config("quadrature.panel_rule must be >= 8".into()));
        }
        if !(self.tail_rel_tol > 0.0 && self.tail_rel_tol < 1.0) {
            return Err(Error::Config("quadrature.tail_rel_tol must be in (0, 1)".into()));
        }
        Ok(())
    }
}

/// Outcome of a converged oscillatory integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOutcome {
    pub value: Complex64,
    pub panels: usize,
    /// True when the epsilon extrapolant rather than the plain sum was used.
    pub accelerated: bool,
}

/// Reusable state for [`integrate_oscillatory`]: the two Gauss rules.
#[derive(Debug, Clone)]
pub struct PanelRules {
    fine: GaussLegendre,
    coarse: GaussLegendre,
}

impl PanelRules {
    pub fn new(cfg: &OscillatoryQuadConfig) -> Self {
        Self {
            fine: GaussLegendre::new(cfg.panel_rule),
            coarse: GaussLegendre::new(cfg.panel_rule / 2),
        }
    }
}

/// ∫₀^∞ g(y) dy for an integrand that oscillates like J0(c y).
///
/// `g` is the complete integrand, Bessel kernel and weight included; `c` only
/// places the panel boundaries at j_{0,k}/c. Each panel is integrated with
/// the configured Gauss–Legendre rule, bisected where the half-order rule
/// disagrees. Partial sums are extrapolated with the epsilon algorithm until
/// two successive estimates agree to `tail_rel_tol`.
pub fn integrate_oscillatory<G>(g: G, c: f64, cfg: &OscillatoryQuadConfig) -> Result<QuadOutcome>
where
    G: FnMut(f64) -> Result<Complex64>,
{
    let rules = PanelRules::new(cfg);
    integrate_oscillatory_with(g, c, cfg, &rules)
}

pub fn integrate_oscillatory_with<G>(
    g: G,
    c: f64,
    cfg: &OscillatoryQuadConfig,
    rules: &PanelRules,
) -> Result<QuadOutcome>
where
    G: FnMut(f64) -> Result<Complex64>,
{
    integrate_oscillatory_near_origin(g, c, 0.0, cfg, rules)
}

/// As [`integrate_oscillatory_with`] for an integrand that also varies on a
/// scale `inner` near y = 0 (for example 1/(y² + inner²)). The first panel is
/// split at inner·4^k so that bisection does not have to find the peak.
pub fn integrate_oscillatory_near_origin<G>(
    mut g: G,
    c: f64,
    inner: f64,
    cfg: &OscillatoryQuadConfig,
    rules: &PanelRules,
) -> Result<QuadOutcome>
where
    G: FnMut(f64) -> Result<Complex64>,
{
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::domain(format!("oscillation scale {c} must be positive")));
    }
    let tol = cfg.tail_rel_tol;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut partials: Vec<Complex64> = Vec::with_capacity(cfg.max_panels);
    let mut last_estimate: Option<Complex64> = None;
    let mut last_change = f64::INFINITY;
    let mut small_panels = 0;
    let mut lo = 0.0;
    for k in 1..=cfg.max_panels {
        let hi = j0_zeros(k) / c;
        let piece = if k == 1 && inner > 0.0 && 4.0 * inner < hi {
            let mut piece = Complex64::new(0.0, 0.0);
            let mut a = 0.0;
            let mut b = inner;
            while a < hi {
                piece += adaptive_panel(&mut g, a, b, rules, tol, piece.norm(), cfg.max_refinement)?;
                a = b;
                b = (4.0 * b).min(hi);
            }
            piece
        } else {
            adaptive_panel(&mut g, lo, hi, rules, tol, sum.norm(), cfg.max_refinement)?
        };
        sum += piece;
        partials.push(sum);
        lo = hi;

        // fast exit for integrands that have effectively decayed
        if piece.norm() <= 0.1 * tol * sum.norm() || (piece.norm() == 0.0 && sum.norm() == 0.0) {
            small_panels += 1;
            if small_panels >= 2 {
                return Ok(QuadOutcome {
                    value: sum,
                    panels: k,
                    accelerated: false,
                });
            }
        } else {
            small_panels = 0;
        }

        if k >= cfg.panels_before_extrapolation {
            let start = partials
                .len()
                .saturating_sub(cfg.panels_before_extrapolation.max(3) + 8);
            let estimate = accelerate_sequence(&partials[start..]).value;
            if let Some(prev) = last_estimate {
                last_change = (estimate - prev).norm();
                if last_change <= tol * estimate.norm() {
                    return Ok(QuadOutcome {
                        value: estimate,
                        panels: k,
                        accelerated: true,
                    });
                }
            }
            last_estimate = Some(estimate);
        }
    }
    Err(Error::QuadratureNotConverged {
        estimate: last_estimate.unwrap_or(sum),
        panels: cfg.max_panels,
        last_change,
    })
}

fn adaptive_panel<G>(
    g: &mut G,
    a: f64,
    b: f64,
    rules: &PanelRules,
    tol: f64,
    scale: f64,
    depth: usize,
) -> Result<Complex64>
where
    G: FnMut(f64) -> Result<Complex64>,
{
    let fine = rules.fine.integrate(a, b, &mut *g)?;
    let coarse = rules.coarse.integrate(a, b, &mut *g)?;
    let err = (fine - coarse).norm();
    if depth == 0 || err <= tol * fine.norm().max(scale) {
        return Ok(fine);
    }
    let mid = 0.5 * (a + b);
    let left = adaptive_panel(g, a, mid, rules, tol, scale, depth - 1)?;
    let right = adaptive_panel(g, mid, b, rules, tol, scale + left.norm(), depth - 1)?;
    Ok(left + right)
}
