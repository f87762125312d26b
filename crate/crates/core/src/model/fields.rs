//! Assembled drawdown fields: point and interval-averaged values in the
//! Laplace domain, their inversion to time, and the observation-well lag.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::confined::ModeSet;
use super::coupling::{coupling_rho, coupling_rho_closed_base, AquitardLayer, TransformPoint};
use super::params::{to_dimensionless, DimensionlessGroups, PhysicalSystem, WaterTable};
use super::vadose::{VadoseSolution, VadoseZone};
use super::SeriesControls;
use crate::error::{Error, Result};
use crate::special::{cosh_ratio_shifted, j0};
use crate::transform::{
    dehoog_from_values, integrate_oscillatory_near_origin, invert_laplace_stehfest, stehfest_nodes,
    stehfest_stable_from_values, GaussLegendre, LaplaceConfig, OscillatoryQuadConfig, PanelRules,
};

const VADOSE_AVERAGE_NODES: usize = 12;

/// Where an observation sits. `Spanning` marks an interval that crosses the
/// aquifer base or the water table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Medium {
    Aquifer,
    Aquitard,
    Vadose,
    Spanning,
}

impl Medium {
    /// The medium containing the point z_D (aquifer on both interfaces).
    pub fn containing(z_d: f64) -> Medium {
        if z_d < 0.0 {
            Medium::Aquitard
        } else if z_d > 1.0 {
            Medium::Vadose
        } else {
            Medium::Aquifer
        }
    }

    /// The medium tag for [z1, z2].
    pub fn for_interval(z1: f64, z2: f64) -> Medium {
        let a = Medium::containing(z1);
        let b = Medium::containing(z2);
        if a == b || z1 == z2 {
            a
        } else if (z1 == 0.0 && b == Medium::Aquifer) || (z2 == 1.0 && a == Medium::Aquifer) {
            Medium::Aquifer
        } else {
            Medium::Spanning
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Medium::Aquifer => "aquifer",
            Medium::Aquitard => "aquitard",
            Medium::Vadose => "vadose",
            Medium::Spanning => "spanning",
        }
    }
}

/// All numerical settings of a field evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModelControls {
    pub laplace: LaplaceConfig,
    pub quadrature: OscillatoryQuadConfig,
    pub series: SeriesControls,
}

impl ModelControls {
    pub fn validate(&self) -> Result<()> {
        self.laplace.validate()?;
        self.quadrature.validate()?;
        self.series.validate()
    }
}

/// Work counters of an evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Diagnostics {
    /// Largest number of Hankel panels used by one integral.
    pub panels: usize,
    /// Largest number of cosine-series terms used.
    pub terms: usize,
    /// A quadrature or series limit was hit and its best estimate used.
    pub partial: bool,
}

impl Diagnostics {
    pub fn merge(&mut self, other: Diagnostics) {
        self.panels = self.panels.max(other.panels);
        self.terms = self.terms.max(other.terms);
        self.partial |= other.partial;
    }
}

/// An observation point (lo = hi) or interval in z_D.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Target {
    pub medium: Medium,
    pub lo: f64,
    pub hi: f64,
}

impl Target {
    pub fn point(z_d: f64) -> Self {
        Self {
            medium: Medium::containing(z_d),
            lo: z_d,
            hi: z_d,
        }
    }

    pub fn interval(z1: f64, z2: f64) -> Self {
        Self {
            medium: Medium::for_interval(z1, z2),
            lo: z1,
            hi: z2,
        }
    }

    pub fn with_medium(medium: Medium, lo: f64, hi: f64) -> Self {
        Self { medium, lo, hi }
    }

    pub fn validate(&self, g: &DimensionlessGroups) -> Result<()> {
        let (lo, hi) = (self.lo, self.hi);
        if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::domain(format!(
                "observation interval [{lo}, {hi}] is not ordered"
            )));
        }
        let top = 1.0 + g.l_vadose;
        let bottom = -g.r_b;
        let ok = match self.medium {
            Medium::Aquifer => lo >= 0.0 && hi <= 1.0,
            Medium::Aquitard => lo >= bottom && hi <= 0.0,
            Medium::Vadose => lo >= 1.0 && hi <= top,
            Medium::Spanning => lo >= bottom && hi <= top && lo < hi && (lo < 0.0 || hi > 1.0),
        };
        if !ok {
            return Err(Error::domain(format!(
                "observation [{lo}, {hi}] is not inside the {} (z_D from {bottom} to {top})",
                self.medium.name()
            )));
        }
        let touches_aquitard = self.medium == Medium::Aquitard || (self.medium == Medium::Spanning && lo < 0.0);
        if touches_aquitard && g.impermeable_base {
            return Err(Error::domain("no aquitard below an impermeable base".to_string()));
        }
        let touches_vadose = self.medium == Medium::Vadose || (self.medium == Medium::Spanning && hi > 1.0);
        if touches_vadose && g.water_table == WaterTable::Instantaneous {
            return Err(Error::domain(
                "no unsaturated zone under instantaneous drainage".to_string(),
            ));
        }
        Ok(())
    }

    fn pieces(&self) -> Vec<(Medium, f64, f64)> {
        if self.medium != Medium::Spanning {
            return vec![(self.medium, self.lo, self.hi)];
        }
        let bands = [
            (Medium::Aquitard, f64::NEG_INFINITY, 0.0),
            (Medium::Aquifer, 0.0, 1.0),
            (Medium::Vadose, 1.0, f64::INFINITY),
        ];
        bands
            .iter()
            .filter_map(|&(m, a, b)| {
                let lo = self.lo.max(a);
                let hi = self.hi.min(b);
                (hi > lo).then_some((m, lo, hi))
            })
            .collect()
    }
}

/// Drawdown at one observation radius for a fixed parameter set.
#[derive(Debug, Clone)]
pub struct FieldModel {
    groups: DimensionlessGroups,
    r_d: f64,
    ctl: ModelControls,
    rules: PanelRules,
    average_rule: GaussLegendre,
}

/// Per-node state shared by all pieces of an observation.
struct Node<'a> {
    model: &'a FieldModel,
    modes: ModeSet,
    vadose: VadoseZone,
    aquitard: AquitardLayer,
}

struct AtY {
    point: TransformPoint,
    vadose: VadoseSolution,
}

impl<'a> Node<'a> {
    fn at(&self, y: f64) -> Result<AtY> {
        let mu = self.modes.mu_sq(y).sqrt();
        let boundary = self.modes.boundary_transforms(y);
        let vadose = self.vadose.solve(y)?;
        let q = vadose.q_d;
        let q1 = self.aquitard.q1b(y);
        let coupling = if self.aquitard.is_closed() {
            coupling_rho_closed_base(mu, q, boundary.top)?
        } else {
            coupling_rho(mu, q, q1, boundary)?
        };
        Ok(AtY {
            point: TransformPoint {
                p: self.modes.p(),
                y,
                mu,
                mu1: self.aquitard.mu1(y),
                q_db: q,
                q1b: q1,
                boundary,
                coupling,
            },
            vadose,
        })
    }

    /// ∫ f(y) y J0(√K_D r_D y) dy with the shared settings.
    fn hankel<F>(&self, mut f: F) -> Result<(Complex64, Diagnostics)>
    where
        F: FnMut(&AtY) -> Result<Complex64>,
    {
        let c = self.modes.scale();
        let cfg = &self.model.ctl.quadrature;
        let out = integrate_oscillatory_near_origin(
            |y| {
                let node = self.at(y)?;
                Ok(f(&node)? * (y * j0(c * y)))
            },
            c,
            self.modes.p_scaled().norm().sqrt(),
            cfg,
            &self.model.rules,
        );
        match out {
            Ok(o) => Ok((
                o.value,
                Diagnostics {
                    panels: o.panels,
                    terms: 0,
                    partial: false,
                },
            )),
            Err(Error::QuadratureNotConverged { estimate, panels, .. }) => Ok((
                estimate,
                Diagnostics {
                    panels,
                    terms: 0,
                    partial: true,
                },
            )),
            Err(e) => Err(e),
        }
    }

    fn aquifer(&self, lo: f64, hi: f64) -> Result<(Complex64, Complex64, Diagnostics)> {
        let conf = if hi > lo {
            self.modes.averaged(lo, hi)
        } else {
            self.modes.point(lo)
        };
        let (u, mut diag) = self.hankel(|n| {
            let mu = n.point.mu;
            let k = &n.point.coupling;
            Ok(if hi > lo {
                let len = hi - lo;
                k.rho1 * (-mu * (1.0 - hi)).exp() * exp_mean(mu, len) + k.rho2 * (-mu * lo).exp() * exp_mean(mu, len)
            } else {
                k.at(mu, lo)
            })
        })?;
        diag.terms = conf.terms;
        diag.partial |= !conf.converged;
        Ok((conf.value, u, diag))
    }

    fn aquitard(&self, lo: f64, hi: f64) -> Result<(Complex64, Diagnostics)> {
        let r_b = self.aquitard.r_b;
        let (v, mut diag) = self.hankel(|n| {
            let total = n.point.boundary.base + n.point.coupling.at(n.point.mu, 0.0);
            let factor = match n.point.mu1 {
                None => {
                    if hi == 0.0 && lo == 0.0 {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                }
                Some(m1) => {
                    if hi > lo {
                        cosh_ratio_mean(m1, lo, hi, r_b)
                    } else {
                        cosh_ratio_shifted(m1, lo, r_b)
                    }
                }
            };
            Ok(total * factor)
        })?;
        diag.terms = self.modes.mode_count();
        Ok((v, diag))
    }

    fn vadose(&self, lo: f64, hi: f64) -> Result<(Complex64, Diagnostics)> {
        let rule = &self.model.average_rule;
        let (v, mut diag) = self.hankel(|n| {
            let total = n.point.boundary.top + n.point.coupling.at(n.point.mu, 1.0);
            let factor = if hi > lo {
                rule.integrate(lo - 1.0, hi - 1.0, |w| n.vadose.profile(w))? / (hi - lo)
            } else {
                n.vadose.profile(lo - 1.0)?
            };
            Ok(total * factor)
        })?;
        diag.terms = self.modes.mode_count();
        Ok((v, diag))
    }
}

/// Mean of e^{−μs} over s ∈ [0, len].
fn exp_mean(mu: Complex64, len: f64) -> Complex64 {
    let x = mu * len;
    if x.norm() < 1e-3 {
        1.0 - x / 2.0 + x * x / 6.0 - x * x * x / 24.0
    } else {
        (1.0 - (-x).exp()) / x
    }
}

/// Mean of cosh(m(z + R))/cosh(mR) over z ∈ [lo, hi] ⊂ [−R, 0].
fn cosh_ratio_mean(m: Complex64, lo: f64, hi: f64, r_b: f64) -> Complex64 {
    let len = hi - lo;
    let em = exp_mean(m, len);
    let up = (m * hi).exp() * em;
    if r_b.is_infinite() {
        return up;
    }
    let down = (-m * (lo + 2.0 * r_b)).exp() * em;
    (up + down) / (1.0 + (-2.0 * m * r_b).exp())
}

/// Laplace-domain value with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceValue {
    pub value: Complex64,
    pub diagnostics: Diagnostics,
}

/// Time-domain dimensionless drawdown with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeValue {
    pub s_d: f64,
    pub diagnostics: Diagnostics,
}

impl FieldModel {
    pub fn new(groups: DimensionlessGroups, r_d: f64, ctl: ModelControls) -> Result<Self> {
        groups.validate()?;
        ctl.validate()?;
        if !(r_d >= groups.rw_b) || !r_d.is_finite() {
            return Err(Error::domain(format!(
                "r_D = {r_d} must be at least the well radius r_w/b = {}",
                groups.rw_b
            )));
        }
        Ok(Self {
            groups,
            r_d,
            rules: PanelRules::new(&ctl.quadrature),
            average_rule: GaussLegendre::new(VADOSE_AVERAGE_NODES),
            ctl,
        })
    }

    pub fn groups(&self) -> &DimensionlessGroups {
        &self.groups
    }

    pub fn r_d(&self) -> f64 {
        self.r_d
    }

    pub fn controls(&self) -> &ModelControls {
        &self.ctl
    }

    fn node(&self, p: Complex64) -> Result<Node<'_>> {
        Ok(Node {
            model: self,
            modes: ModeSet::new(&self.groups, self.r_d, p, &self.ctl.series)?,
            vadose: VadoseZone::new(&self.groups, self.r_d, p),
            aquitard: AquitardLayer::new(&self.groups, self.r_d, p),
        })
    }

    /// Laplace transform (in t_s) of s_D at the target.
    pub fn laplace(&self, p: Complex64, target: &Target) -> Result<LaplaceValue> {
        target.validate(&self.groups)?;
        let node = self.node(p)?;
        let pieces = target.pieces();
        let total = target.hi - target.lo;
        let mut value = Complex64::new(0.0, 0.0);
        let mut diagnostics = Diagnostics::default();
        for &(medium, lo, hi) in &pieces {
            let (v, d) = match medium {
                Medium::Aquifer => {
                    let (c, u, d) = node.aquifer(lo, hi)?;
                    (c + u, d)
                }
                Medium::Aquitard => node.aquitard(lo, hi)?,
                Medium::Vadose => node.vadose(lo, hi)?,
                Medium::Spanning => unreachable!("split above"),
            };
            let weight = if pieces.len() == 1 { 1.0 } else { (hi - lo) / total };
            value += weight * v;
            diagnostics.merge(d);
        }
        Ok(LaplaceValue { value, diagnostics })
    }

    /// The confined part s̄_C and the correction s̄_U at an aquifer target.
    pub fn aquifer_parts(&self, p: Complex64, lo: f64, hi: f64) -> Result<(Complex64, Complex64, Diagnostics)> {
        Target::with_medium(Medium::Aquifer, lo, hi).validate(&self.groups)?;
        self.node(p)?.aquifer(lo, hi)
    }

    /// Inspect the transformed quantities at one (p, y) node.
    pub fn transform_point(&self, p: Complex64, y: f64) -> Result<TransformPoint> {
        Ok(self.node(p)?.at(y)?.point)
    }

    /// s_D(t_s) at the target by de Hoog inversion.
    pub fn drawdown(&self, target: &Target, t_s: f64) -> Result<TimeValue> {
        if !(t_s > 0.0) || !t_s.is_finite() {
            return Err(Error::domain(format!("t_s = {t_s} must be positive")));
        }
        let mut diagnostics = Diagnostics::default();
        let mut values = Vec::with_capacity(self.ctl.laplace.n_terms + 1);
        for p in self.ctl.laplace.nodes(t_s) {
            let v = self.laplace(p, target)?;
            diagnostics.merge(v.diagnostics);
            values.push(v.value);
        }
        let s_d = dehoog_from_values(&values, t_s, &self.ctl.laplace)?;
        Ok(TimeValue { s_d, diagnostics })
    }

    /// s_D(t_s) by Gaver–Stehfest inversion with `n` real probes.
    pub fn drawdown_stehfest(&self, target: &Target, t_s: f64, n: usize) -> Result<TimeValue> {
        let mut diagnostics = Diagnostics::default();
        let s_d = invert_laplace_stehfest(
            |p| {
                let v = self.laplace(Complex64::new(p, 0.0), target)?;
                diagnostics.merge(v.diagnostics);
                Ok(v.value.re)
            },
            t_s,
            n,
        )?;
        Ok(TimeValue { s_d, diagnostics })
    }
}

/// Stehfest orders tried by [`FieldModel::drawdown_stehfest_stable`].
pub const STEHFEST_ORDERS: [usize; 6] = [8, 10, 12, 14, 16, 18];

impl FieldModel {
    /// s_D(t_s) by Gaver–Stehfest, the order picked from [`STEHFEST_ORDERS`]
    /// as the most stable one (see [`stehfest_stable_from_values`]). Returns
    /// the value and the order used.
    pub fn drawdown_stehfest_stable(&self, target: &Target, t_s: f64) -> Result<(TimeValue, usize)> {
        if !(t_s > 0.0) || !t_s.is_finite() {
            return Err(Error::domain(format!("t_s = {t_s} must be positive")));
        }
        let n_max = STEHFEST_ORDERS[STEHFEST_ORDERS.len() - 1];
        let mut diagnostics = Diagnostics::default();
        let mut values = Vec::with_capacity(n_max);
        for p in stehfest_nodes(t_s, n_max) {
            let v = self.laplace(Complex64::new(p, 0.0), target)?;
            diagnostics.merge(v.diagnostics);
            values.push(v.value.re);
        }
        let (s_d, n) = stehfest_stable_from_values(&values, t_s, &STEHFEST_ORDERS);
        Ok((TimeValue { s_d, diagnostics }, n))
    }
}

/// s̄_U(r_D, z_D; p), the unconfined correction inside the aquifer.
pub fn sbar_u(g: &DimensionlessGroups, r_d: f64, z_d: f64, p: Complex64, ctl: &ModelControls) -> Result<Complex64> {
    let (_, u, _) = FieldModel::new(*g, r_d, *ctl)?.aquifer_parts(p, z_d, z_d)?;
    Ok(u)
}

/// s̄_1(r_D, z_D; p) in the aquitard, z_D ∈ [−R_b, 0].
pub fn sbar_1(g: &DimensionlessGroups, r_d: f64, z_d: f64, p: Complex64, ctl: &ModelControls) -> Result<Complex64> {
    let t = Target::with_medium(Medium::Aquitard, z_d, z_d);
    Ok(FieldModel::new(*g, r_d, *ctl)?.laplace(p, &t)?.value)
}

/// σ̄(r_D, z_D; p) in the unsaturated zone, z_D ∈ [1, 1 + L_D].
pub fn sigma_bar(g: &DimensionlessGroups, r_d: f64, z_d: f64, p: Complex64, ctl: &ModelControls) -> Result<Complex64> {
    let t = Target::with_medium(Medium::Vadose, z_d, z_d);
    Ok(FieldModel::new(*g, r_d, *ctl)?.laplace(p, &t)?.value)
}

/// Dimensional drawdown with its dimensionless value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Drawdown {
    pub s: f64,
    pub s_d: f64,
    pub diagnostics: Diagnostics,
}

/// Drawdown s(r, z, t), z measured up from the aquifer base.
pub fn drawdown(sys: &PhysicalSystem, r: f64, z: f64, t: f64, ctl: &ModelControls) -> Result<Drawdown> {
    averaged_drawdown(sys, r, z, z, t, ctl)
}

/// Mean drawdown over z ∈ [z1, z2]; a degenerate interval gives the point
/// value.
pub fn averaged_drawdown(
    sys: &PhysicalSystem,
    r: f64,
    z1: f64,
    z2: f64,
    t: f64,
    ctl: &ModelControls,
) -> Result<Drawdown> {
    let tag = |e: Error| e.at_point(r, z1, t);
    let (g, r_d, t_s) = to_dimensionless(sys, r, t).map_err(tag)?;
    if t == 0.0 {
        return Ok(Drawdown {
            s: 0.0,
            s_d: 0.0,
            diagnostics: Diagnostics::default(),
        });
    }
    let b = sys.aquifer.b;
    let target = Target::interval(z1 / b, z2 / b);
    let model = FieldModel::new(g, r_d, *ctl).map_err(tag)?;
    let v = model.drawdown(&target, t_s).map_err(tag)?;
    Ok(Drawdown {
        s: v.s_d * sys.drawdown_scale(),
        s_d: v.s_d,
        diagnostics: v.diagnostics,
    })
}

/// Observation-well response s (1 − e^{−t/t_B}); t_B = 0 means no lag.
pub fn delayed_drawdown(s: f64, t: f64, t_b: f64) -> Result<f64> {
    if !(t_b >= 0.0) {
        return Err(Error::domain(format!("lag time {t_b} must be non-negative")));
    }
    if t_b == 0.0 {
        return Ok(s);
    }
    Ok(-s * (-t / t_b).exp_m1())
}

impl FieldModel {
    /// A copy with tighter inner tolerances, for use with Stehfest inversion,
    /// which amplifies transform errors by the size of its weights.
    pub fn stehfest_oracle(&self) -> Result<FieldModel> {
        let mut ctl = self.ctl;
        ctl.quadrature.tail_rel_tol = ctl.quadrature.tail_rel_tol.min(1e-11);
        ctl.series.series_rel_tol = ctl.series.series_rel_tol.min(1e-12);
        FieldModel::new(self.groups, self.r_d, ctl)
    }
}
