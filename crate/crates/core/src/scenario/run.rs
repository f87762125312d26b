//! Curve evaluation over (variant × observation × time) in parallel.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::config::{Observation, ScenarioConfig, Variant};
use crate::error::{Error, Result};
use crate::model::{delayed_drawdown, FieldModel, Medium, Target};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flag {
    Converged,
    /// A quadrature or series limit was reached; its best estimate was used.
    AcceleratedPartial,
    Failed,
}

impl Flag {
    pub fn as_str(self) -> &'static str {
        match self {
            Flag::Converged => "converged",
            Flag::AcceleratedPartial => "accelerated-partial",
            Flag::Failed => "failed",
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointResult {
    pub t_s: f64,
    /// NaN when the point failed.
    pub s_d: f64,
    pub s_md: f64,
    pub flag: Flag,
    pub panels: usize,
    pub terms: usize,
    /// Gaver–Stehfest value when cross-checking.
    pub stehfest: Option<f64>,
    pub error: Option<String>,
}

impl PointResult {
    /// |de Hoog − Stehfest| / |Stehfest|, when both exist.
    pub fn discrepancy(&self) -> Option<f64> {
        let st = self.stehfest?;
        if self.flag == Flag::Failed || !st.is_finite() {
            return None;
        }
        Some((self.s_d - st).abs() / st.abs().max(f64::MIN_POSITIVE))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveResult {
    pub scenario_id: String,
    pub variant_key: Option<String>,
    pub variant_value: Option<f64>,
    pub r_d: f64,
    pub z_lo: f64,
    pub z_hi: f64,
    pub medium: Medium,
    pub t_bs: f64,
    pub points: Vec<PointResult>,
}

impl CurveResult {
    /// Human-readable name of the curve.
    pub fn label(&self) -> String {
        let z = if self.z_lo == self.z_hi {
            format!("z_D={}", self.z_lo)
        } else {
            format!("z_D=[{}, {}]", self.z_lo, self.z_hi)
        };
        let mut s = format!("{} r_D={} {z}", self.scenario_id, self.r_d);
        if let (Some(k), Some(v)) = (&self.variant_key, self.variant_value) {
            s.push_str(&format!(" {k}={v}"));
        }
        s
    }

    pub fn count(&self, flag: Flag) -> usize {
        self.points.iter().filter(|p| p.flag == flag).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RunOptions {
    pub cross_check: bool,
}

struct Curve<'a> {
    variant: &'a Variant,
    obs: &'a Observation,
    model: FieldModel,
    oracle: Option<FieldModel>,
}

fn evaluate(curve: &Curve<'_>, target: &Target, t_s: f64) -> PointResult {
    let r_d = curve.model.r_d();
    match curve.model.drawdown(target, t_s) {
        Ok(v) => {
            let flag = if v.diagnostics.partial {
                Flag::AcceleratedPartial
            } else {
                Flag::Converged
            };
            let s_md = delayed_drawdown(v.s_d, t_s, curve.obs.t_bs).unwrap_or(f64::NAN);
            let (stehfest, error) = match &curve.oracle {
                Some(o) if flag == Flag::Converged => match o.drawdown_stehfest_stable(target, t_s) {
                    Ok((s, _)) => (Some(s.s_d), None),
                    Err(e) => (None, Some(format!("stehfest: {}", e.at_point(r_d, target.lo, t_s)))),
                },
                _ => (None, None),
            };
            PointResult {
                t_s,
                s_d: v.s_d,
                s_md,
                flag,
                panels: v.diagnostics.panels,
                terms: v.diagnostics.terms,
                stehfest,
                error,
            }
        }
        Err(e) => PointResult {
            t_s,
            s_d: f64::NAN,
            s_md: f64::NAN,
            flag: Flag::Failed,
            panels: 0,
            terms: 0,
            stehfest: None,
            error: Some(e.at_point(r_d, target.lo, t_s).to_string()),
        },
    }
}

/// One curve per (variant × observation), variants outermost. Point
/// failures are recorded in the flags; the run itself only fails on an
/// invalid configuration.
pub fn run_scenario(cfg: &ScenarioConfig, opts: RunOptions) -> Result<Vec<CurveResult>> {
    cfg.validate()?;
    let variants = cfg.variants()?;
    let times = cfg.time_grid.times();
    let mut curves = Vec::with_capacity(variants.len() * cfg.observations.len());
    for v in &variants {
        for obs in &cfg.observations {
            let model = FieldModel::new(v.groups, obs.r_d, cfg.numerics)?;
            let oracle = if opts.cross_check {
                Some(model.stehfest_oracle()?)
            } else {
                None
            };
            curves.push(Curve {
                variant: v,
                obs,
                model,
                oracle,
            });
        }
    }
    let jobs: Vec<(usize, f64)> = (0..curves.len())
        .flat_map(|c| times.iter().map(move |&t| (c, t)))
        .collect();
    let targets: Vec<Target> = curves.iter().map(|c| c.obs.target()).collect();
    let points: Vec<PointResult> = jobs
        .par_iter()
        .map(|&(c, t)| evaluate(&curves[c], &targets[c], t))
        .collect();

    let mut out = Vec::with_capacity(curves.len());
    let mut rest = points.into_iter();
    for (curve, target) in curves.iter().zip(&targets) {
        out.push(CurveResult {
            scenario_id: cfg.id.clone(),
            variant_key: curve.variant.key.clone(),
            variant_value: curve.variant.value,
            r_d: curve.obs.r_d,
            z_lo: target.lo,
            z_hi: target.hi,
            medium: target.medium,
            t_bs: curve.obs.t_bs,
            points: rest.by_ref().take(times.len()).collect(),
        });
    }
    Ok(out)
}

/// Whether every point of every curve failed.
pub fn all_failed(results: &[CurveResult]) -> bool {
    results.iter().all(|c| c.points.iter().all(|p| p.flag == Flag::Failed))
}

/// Whether any point is not converged.
pub fn any_unconverged(results: &[CurveResult]) -> bool {
    results
        .iter()
        .any(|c| c.points.iter().any(|p| p.flag != Flag::Converged))
}

/// Turn a run into an error if nothing could be computed.
pub fn require_some(results: Vec<CurveResult>) -> Result<Vec<CurveResult>> {
    if !results.is_empty() && all_failed(&results) {
        let first = results[0]
            .points
            .first()
            .and_then(|p| p.error.clone())
            .unwrap_or_default();
        return Err(Error::domain(format!("every point failed; first error: {first}")));
    }
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::builtin;

    fn small(id: &str) -> ScenarioConfig {
        let mut cfg = builtin(id).unwrap();
        cfg.time_grid.log10_start = 0.0;
        cfg.time_grid.log10_end = 1.0;
        cfg.time_grid.points_per_decade = 1;
        cfg
    }

    #[test]
    fn one_curve_per_variant_and_observation() {
        let cfg = small("fig3a");
        let res = run_scenario(&cfg, RunOptions::default()).unwrap();
        assert_eq!(res.len(), cfg.variants().unwrap().len() * cfg.observations.len());
        for c in &res {
            assert_eq!(c.points.len(), 2);
            assert_eq!(c.count(Flag::Converged), 2, "{}", c.label());
        }
    }

    #[test]
    fn panel_cap_gives_partial_flags() {
        let mut cfg = small("fig2b");
        cfg.numerics.quadrature.max_panels = 1;
        let res = run_scenario(&cfg, RunOptions::default()).unwrap();
        assert!(any_unconverged(&res));
        assert!(res.iter().flat_map(|c| &c.points).all(|p| p.flag != Flag::Converged));
    }

    #[test]
    fn lag_is_applied() {
        let mut cfg = small("fig2b");
        cfg.observations[0].t_bs = 1.0;
        let res = run_scenario(&cfg, RunOptions::default()).unwrap();
        let p = &res[0].points[0];
        assert!((p.s_md - p.s_d * (1.0 - (-p.t_s).exp())).abs() < 1e-14 * p.s_d);
    }
}
