//! CSV tables, gnuplot scripts and convergence summaries.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use super::run::{CurveResult, Flag};
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 12] = [
    "scenario_id",
    "variant_key",
    "variant_value",
    "r_D",
    "z_D_lo",
    "z_D_hi",
    "t_s",
    "s_D",
    "s_mD",
    "flag",
    "panels",
    "terms",
];

fn num(x: f64) -> String {
    format!("{x:.10e}")
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

/// Write the results table to any writer.
pub fn write_csv<W: Write>(results: &[CurveResult], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let fail = |e: csv::Error| Error::Io {
        path: "<csv>".into(),
        message: e.to_string(),
    };
    w.write_record(CSV_HEADER).map_err(fail)?;
    for c in results {
        let key = c.variant_key.clone().unwrap_or_default();
        let value = c.variant_value.map(num).unwrap_or_default();
        for p in &c.points {
            w.write_record([
                c.scenario_id.clone(),
                key.clone(),
                value.clone(),
                num(c.r_d),
                num(c.z_lo),
                num(c.z_hi),
                num(p.t_s),
                num(p.s_d),
                num(p.s_md),
                p.flag.to_string(),
                p.panels.to_string(),
                p.terms.to_string(),
            ])
            .map_err(fail)?;
        }
    }
    w.flush().map_err(|e| Error::Io {
        path: "<csv>".into(),
        message: e.to_string(),
    })
}

pub fn emit_csv(results: &[CurveResult], path: &Path) -> Result<()> {
    if results.is_empty() {
        return Err(Error::domain("no results to write"));
    }
    let file = std::fs::File::create(path).map_err(|e| io_err(path, e))?;
    write_csv(results, std::io::BufWriter::new(file)).map_err(|e| match e {
        Error::Io { message, .. } => io_err(path, message),
        other => other,
    })
}

/// A gnuplot script with one inline data block per curve; positive,
/// non-failed points only since the axes are logarithmic.
pub fn plot_script(results: &[CurveResult], title: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# gnuplot script; run with `gnuplot -p <file>`");
    for (i, c) in results.iter().enumerate() {
        let _ = writeln!(s, "# {}", c.label());
        let _ = writeln!(s, "$curve{i} << EOD");
        for p in c.points.iter().filter(|p| p.flag != Flag::Failed && p.s_d > 0.0) {
            let _ = writeln!(s, "{} {}", num(p.t_s), num(p.s_d));
        }
        let _ = writeln!(s, "EOD");
    }
    let _ = writeln!(s, "set title \"{}\" noenhanced", title.replace('"', "'"));
    let _ = writeln!(s, "set logscale xy");
    let _ = writeln!(s, "set format x \"10^{{%L}}\"");
    let _ = writeln!(s, "set format y \"10^{{%L}}\"");
    let _ = writeln!(s, "set xlabel \"t_s\"");
    let _ = writeln!(s, "set ylabel \"s_D\"");
    let _ = writeln!(s, "set key left top noenhanced");
    let series: Vec<String> = results
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let name = match (&c.variant_key, c.variant_value) {
                (Some(k), Some(v)) => format!("{k} = {v}"),
                _ => format!("r_D = {}, z_D = {}", c.r_d, c.z_lo),
            };
            format!("$curve{i} using 1:2 with lines title \"{name}\"")
        })
        .collect();
    let _ = writeln!(s, "plot {}", series.join(", \\\n     "));
    s
}

pub fn emit_plot_script(results: &[CurveResult], path: &Path) -> Result<()> {
    if results.is_empty() {
        return Err(Error::domain("no results to plot"));
    }
    let title = results[0].scenario_id.clone();
    std::fs::write(path, plot_script(results, &title)).map_err(|e| io_err(path, e))
}

/// Per-curve diagnostic summary.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSummary {
    pub label: String,
    pub max_panels: usize,
    pub max_terms: usize,
    pub partial: usize,
    pub failed: usize,
    /// Largest relative de Hoog/Stehfest difference over converged points.
    pub max_discrepancy: Option<f64>,
    pub first_error: Option<String>,
}

pub fn summarize(results: &[CurveResult]) -> Vec<CurveSummary> {
    results
        .iter()
        .map(|c| CurveSummary {
            label: c.label(),
            max_panels: c.points.iter().map(|p| p.panels).max().unwrap_or(0),
            max_terms: c.points.iter().map(|p| p.terms).max().unwrap_or(0),
            partial: c.count(Flag::AcceleratedPartial),
            failed: c.count(Flag::Failed),
            max_discrepancy: c
                .points
                .iter()
                .filter(|p| p.flag == Flag::Converged)
                .filter_map(|p| p.discrepancy())
                .reduce(f64::max),
            first_error: c.points.iter().find_map(|p| p.error.clone()),
        })
        .collect()
}

pub fn convergence_report(results: &[CurveResult]) -> String {
    let mut s = String::new();
    let summaries = summarize(results);
    let mut bad = 0;
    for c in &summaries {
        let _ = write!(
            s,
            "{}: max panels {}, max terms {}, not converged {} (partial {}, failed {})",
            c.label,
            c.max_panels,
            c.max_terms,
            c.partial + c.failed,
            c.partial,
            c.failed
        );
        if let Some(d) = c.max_discrepancy {
            let _ = write!(s, ", de Hoog/Stehfest max discrepancy {d:.3e}");
        }
        s.push('\n');
        if let Some(e) = &c.first_error {
            let _ = writeln!(s, "  first error: {e}");
        }
        bad += c.partial + c.failed;
    }
    let total: usize = results.iter().map(|c| c.points.len()).sum();
    let _ = writeln!(s, "{} curves, {total} points, {bad} not converged", summaries.len());
    s
}
