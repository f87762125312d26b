//! Scenario files, built-in figure scenarios, curve runs and their outputs.

pub mod config;
pub mod output;
pub mod run;

pub use config::{
    parse_config, parse_config_file, Elevation, Observation, ScenarioConfig, SweepKey, TimeGrid, Variant, Variants,
};
pub use output::{
    convergence_report, emit_csv, emit_plot_script, plot_script, summarize, write_csv, CurveSummary, CSV_HEADER,
};
pub use run::{all_failed, any_unconverged, require_some, run_scenario, CurveResult, Flag, PointResult, RunOptions};

use crate::error::{Error, Result};

/// Built-in type-curve scenarios as (name, TOML text).
pub const BUILTINS: [(&str, &str); 10] = [
    ("fig2a", include_str!("../../scenarios/fig2a.toml")),
    ("fig2b", include_str!("../../scenarios/fig2b.toml")),
    ("fig3a", include_str!("../../scenarios/fig3a.toml")),
    ("fig3b", include_str!("../../scenarios/fig3b.toml")),
    ("fig4", include_str!("../../scenarios/fig4.toml")),
    ("fig5", include_str!("../../scenarios/fig5.toml")),
    ("fig6", include_str!("../../scenarios/fig6.toml")),
    ("fig7", include_str!("../../scenarios/fig7.toml")),
    ("fig8", include_str!("../../scenarios/fig8.toml")),
    ("fig9", include_str!("../../scenarios/fig9.toml")),
];

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUILTINS.iter().map(|(n, _)| *n)
}

pub fn builtin(name: &str) -> Result<ScenarioConfig> {
    let (_, text) = BUILTINS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Config(format!("no built-in scenario `{name}`; see list-builtins")))?;
    parse_config(text)
}
