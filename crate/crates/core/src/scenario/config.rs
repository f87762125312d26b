//! Scenario files: TOML with a parameter block, observations, a log-spaced
//! time grid, numerical controls and an optional one-parameter sweep.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{to_dimensionless, DimensionlessGroups, Medium, ModelControls, PhysicalSystem, Target};

/// A scalar z_D or an interval [z_D1, z_D2].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Elevation {
    Point(f64),
    Interval([f64; 2]),
}

impl Elevation {
    /// (lo, hi) with lo ≤ hi.
    pub fn bounds(self) -> (f64, f64) {
        match self {
            Elevation::Point(z) => (z, z),
            Elevation::Interval([a, b]) => (a.min(b), a.max(b)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Observation {
    #[serde(rename = "r_D")]
    pub r_d: f64,
    #[serde(rename = "z_D")]
    pub z_d: Elevation,
    /// Required as "spanning" for intervals that cross an interface;
    /// otherwise inferred.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub medium: Option<Medium>,
    /// Observation-well lag t_Bs; 0 means none.
    #[serde(rename = "t_Bs", default)]
    pub t_bs: f64,
}

impl Observation {
    pub fn target(&self) -> Target {
        let (lo, hi) = self.z_d.bounds();
        Target::with_medium(self.medium.unwrap_or_else(|| Medium::for_interval(lo, hi)), lo, hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub log10_start: f64,
    pub log10_end: f64,
    pub points_per_decade: usize,
}

impl TimeGrid {
    pub fn validate(&self) -> Result<()> {
        if !self.log10_start.is_finite() || !self.log10_end.is_finite() {
            return Err(Error::Config("time_grid bounds must be finite".into()));
        }
        if !(self.log10_end > self.log10_start) {
            return Err(Error::Config(format!(
                "time_grid.log10_end = {} must exceed log10_start = {}",
                self.log10_end, self.log10_start
            )));
        }
        if self.points_per_decade == 0 || self.points_per_decade > 100 {
            return Err(Error::Config("time_grid.points_per_decade must be in 1..=100".into()));
        }
        if !(self.log10_start > -300.0 && self.log10_end < 300.0) {
            return Err(Error::Config("time_grid bounds must stay within 1e-300..1e300".into()));
        }
        Ok(())
    }

    /// t_s values 10^(start + k/ppd) up to and including the end point
    /// (when it falls on the lattice).
    pub fn times(&self) -> Vec<f64> {
        let ppd = self.points_per_decade as f64;
        let n = ((self.log10_end - self.log10_start) * ppd + 1e-9).floor() as usize + 1;
        (0..n).map(|k| 10f64.powf(self.log10_start + k as f64 / ppd)).collect()
    }
}

/// One key or several keys set to the same value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SweepKey {
    One(String),
    Many(Vec<String>),
}

impl SweepKey {
    pub fn keys(&self) -> Vec<&str> {
        match self {
            SweepKey::One(k) => vec![k.as_str()],
            SweepKey::Many(ks) => ks.iter().map(String::as_str).collect(),
        }
    }

    /// The CSV label, keys joined by '+'.
    pub fn label(&self) -> String {
        self.keys().join("+")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Variants {
    pub key: SweepKey,
    #[serde(default)]
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub id: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimensionless: Option<DimensionlessGroups>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub physical: Option<PhysicalSystem>,
    pub time_grid: TimeGrid,
    #[serde(default)]
    pub numerics: ModelControls,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variants: Option<Variants>,
    pub observations: Vec<Observation>,
}

/// One parameter set of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct Variant {
    pub key: Option<String>,
    pub value: Option<f64>,
    pub groups: DimensionlessGroups,
}

impl ScenarioConfig {
    /// Base dimensionless groups, converting a physical block if given.
    pub fn base_groups(&self) -> Result<DimensionlessGroups> {
        match (&self.dimensionless, &self.physical) {
            (Some(g), None) => Ok(*g),
            (None, Some(sys)) => Ok(to_dimensionless(sys, sys.aquifer.b, 1.0)?.0),
            (Some(_), Some(_)) => Err(Error::Config(
                "give either [dimensionless] or [physical], not both".into(),
            )),
            (None, None) => Err(Error::Config("missing [dimensionless] or [physical] block".into())),
        }
    }

    /// Parameter sets in sweep order; a single base set without a sweep.
    pub fn variants(&self) -> Result<Vec<Variant>> {
        let base = self.base_groups()?;
        let Some(v) = self.variants.as_ref().filter(|v| !v.values.is_empty()) else {
            return Ok(vec![Variant {
                key: None,
                value: None,
                groups: base,
            }]);
        };
        v.values
            .iter()
            .map(|&value| {
                let mut g = base;
                for key in v.key.keys() {
                    g.set(key, value)?;
                }
                Ok(Variant {
                    key: Some(v.key.label()),
                    value: Some(value),
                    groups: g,
                })
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.id.is_empty() || self.id.contains(|c: char| c == ',' || c.is_whitespace()) {
            return Err(Error::Config(format!(
                "id `{}` must be non-empty without commas or whitespace",
                self.id
            )));
        }
        self.time_grid.validate()?;
        self.numerics.validate()?;
        if let Some(v) = &self.variants {
            for key in v.key.keys() {
                if !DimensionlessGroups::SWEEP_KEYS.contains(&key) {
                    return Err(Error::Config(format!(
                        "variants.key `{key}` is not a sweepable field (one of {})",
                        DimensionlessGroups::SWEEP_KEYS.join(", ")
                    )));
                }
            }
            if let Some(bad) = v.values.iter().find(|x| x.is_nan()) {
                return Err(Error::Config(format!("variants.values contains {bad}")));
            }
        }
        if self.observations.is_empty() {
            return Err(Error::Config("at least one [[observations]] entry is required".into()));
        }
        let variants = self.variants()?;
        for (i, obs) in self.observations.iter().enumerate() {
            let field = |msg: String| Error::Config(format!("observations[{i}]: {msg}"));
            if !(obs.r_d > 0.0) || !obs.r_d.is_finite() {
                return Err(field(format!("r_D = {} must be positive", obs.r_d)));
            }
            if !(obs.t_bs >= 0.0) || !obs.t_bs.is_finite() {
                return Err(field(format!("t_Bs = {} must be non-negative", obs.t_bs)));
            }
            let (lo, hi) = obs.z_d.bounds();
            let inferred = Medium::for_interval(lo, hi);
            match obs.medium {
                None if inferred == Medium::Spanning => {
                    return Err(field(format!(
                        "z_D interval [{lo}, {hi}] crosses an interface; mark it medium = \"spanning\""
                    )))
                }
                Some(m) if m != inferred => {
                    return Err(field(format!(
                        "medium `{}` does not match z_D interval [{lo}, {hi}] ({})",
                        m.name(),
                        inferred.name()
                    )))
                }
                _ => {}
            }
            for v in &variants {
                let tag = |e: Error| match &v.key {
                    Some(k) => field(format!("{k} = {}: {e}", v.value.unwrap_or(f64::NAN))),
                    None => field(e.to_string()),
                };
                v.groups.validate().map_err(tag)?;
                obs.target().validate(&v.groups).map_err(tag)?;
                if obs.r_d < v.groups.rw_b {
                    return Err(tag(Error::Config(format!(
                        "r_D = {} lies inside the well (rw_b = {})",
                        obs.r_d, v.groups.rw_b
                    ))));
                }
            }
        }
        Ok(())
    }

    /// Fill inferred defaults so that the canonical form is explicit.
    fn normalize(&mut self) {
        for obs in &mut self.observations {
            let (lo, hi) = obs.z_d.bounds();
            if let Elevation::Interval(_) = obs.z_d {
                obs.z_d = Elevation::Interval([lo, hi]);
            }
            obs.medium = Some(obs.medium.unwrap_or_else(|| Medium::for_interval(lo, hi)));
        }
    }

    /// Canonical TOML text: every default written out.
    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(format!("cannot serialize scenario: {e}")))
    }
}

/// Parse and validate scenario text; defaults are filled in.
pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    let mut cfg: ScenarioConfig = toml::from_str(text).map_err(|e| {
        let msg = e.message().trim_end().to_string();
        match e.span() {
            Some(span) => {
                let line = text[..span.start.min(text.len())].matches('\n').count() + 1;
                Error::Config(format!("line {line}: {msg}"))
            }
            None => Error::Config(msg),
        }
    })?;
    cfg.validate()?;
    cfg.normalize();
    Ok(cfg)
}

pub fn parse_config_file(path: &Path) -> Result<ScenarioConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_config(&text).map_err(|e| match e {
        Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
        other => other,
    })
}
