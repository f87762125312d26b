use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use leaky_aquifer::model::{hankel_round_trip, DimensionlessGroups};
use leaky_aquifer::scenario::{
    all_failed, any_unconverged, builtin, builtin_names, convergence_report, emit_csv, emit_plot_script, parse_config,
    parse_config_file, run_scenario, summarize, CurveResult, RunOptions, ScenarioConfig,
};
use leaky_aquifer::Error;

const THREADS_ENV: &str = "LEAKY_AQUIFER_THREADS";

/// Drawdown type curves for a pumped leaky-unconfined aquifer.
#[derive(Parser, Debug)]
#[command(name = "leaky-aquifer", version)]
struct Cli {
    /// Worker threads (default: $LEAKY_AQUIFER_THREADS, else all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a scenario file.
    Run {
        config: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run a built-in figure scenario.
    Builtin {
        name: String,
        /// Print the scenario file instead of running it.
        #[arg(long)]
        show: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// List the built-in scenarios.
    ListBuiltins,
    /// Hankel round trip, config round trip and de Hoog/Stehfest cross-check.
    Check {
        /// Scenarios to cross-check.
        #[arg(long = "scenario", default_value = "fig2b")]
        scenarios: Vec<String>,
    },
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Also invert with Gaver–Stehfest and report the discrepancy.
    #[arg(long)]
    cross_check: bool,
    /// Set the quadrature tail and cosine-series tolerances.
    #[arg(long, value_name = "TOL")]
    tol_override: Option<f64>,
}

enum Failure {
    Config(String),
    Total(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_) => Failure::Config(e.to_string()),
            other => Failure::Total(other.to_string()),
        }
    }
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    if let Some(n) = flag {
        return Ok(Some(n));
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Config(format!("{THREADS_ENV} = {v:?} is not a thread count"))),
        Err(_) => Ok(None),
    }
}

fn init_threads(flag: Option<usize>) -> Result<(), Failure> {
    let Some(n) = thread_count(flag)? else {
        return Ok(());
    };
    if n == 0 {
        return Err(Failure::Config("thread count must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Total(e.to_string()))
}

fn apply_tol(cfg: &mut ScenarioConfig, tol: Option<f64>) -> Result<(), Failure> {
    if let Some(t) = tol {
        cfg.numerics.quadrature.tail_rel_tol = t;
        cfg.numerics.series.series_rel_tol = t;
        cfg.numerics
            .validate()
            .map_err(|e| Failure::Config(format!("--tol-override {t}: {e}")))?;
    }
    Ok(())
}

fn write_outputs(results: &[CurveResult], dir: &Path, id: &str) -> Result<String, Failure> {
    std::fs::create_dir_all(dir).map_err(|e| Failure::Total(format!("cannot create {}: {e}", dir.display())))?;
    emit_csv(results, &dir.join(format!("{id}.csv")))?;
    emit_plot_script(results, &dir.join(format!("{id}.gp")))?;
    let report = convergence_report(results);
    let path = dir.join(format!("{id}.report.txt"));
    std::fs::write(&path, &report).map_err(|e| Failure::Total(format!("cannot write {}: {e}", path.display())))?;
    Ok(report)
}

fn run(mut cfg: ScenarioConfig, out: &OutputArgs) -> Result<ExitCode, Failure> {
    apply_tol(&mut cfg, out.tol_override)?;
    let start = Instant::now();
    let results = run_scenario(
        &cfg,
        RunOptions {
            cross_check: out.cross_check,
        },
    )?;
    let report = write_outputs(&results, &out.out_dir, &cfg.id)?;
    print!("{report}");
    println!(
        "wrote {}/{}.csv and {}.gp in {:.1} s",
        out.out_dir.display(),
        cfg.id,
        cfg.id,
        start.elapsed().as_secs_f64()
    );
    if all_failed(&results) {
        eprintln!("error: every point failed");
        Ok(ExitCode::from(3))
    } else if any_unconverged(&results) {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

/// Fixed (r_D, z_D, p) nodes spread over the figure parameter range.
const ROUND_TRIP_NODES: [(f64, f64, f64); 10] = [
    (0.05, 1.0, 0.02),
    (0.1, 0.0, 5.0),
    (0.2, 1.0, 0.3),
    (0.35, 0.0, 0.7),
    (0.5, 1.0, 1.0),
    (0.75, 0.0, 0.05),
    (1.0, 1.0, 2.5),
    (1.5, 0.0, 0.15),
    (2.5, 1.0, 0.01),
    (4.0, 0.0, 0.4),
];

fn check(scenarios: &[String]) -> Result<ExitCode, Failure> {
    let mut ok = true;
    let mut line = |pass: bool, msg: String| {
        ok &= pass;
        println!("{} {msg}", if pass { "PASS" } else { "FAIL" });
    };

    let base = builtin("fig2b")?;
    let groups: DimensionlessGroups = base.base_groups()?;
    let mut worst = 0.0f64;
    for &(r_d, z_d, p) in &ROUND_TRIP_NODES {
        let rt = hankel_round_trip(&groups, r_d, z_d, p, &base.numerics.series, &base.numerics.quadrature)?;
        worst = worst.max(rt.rel_error());
    }
    line(
        worst <= 1e-4,
        format!("hankel round trip: max relative error {worst:.2e} over 10 nodes (limit 1e-4)"),
    );

    let mut bad = Vec::new();
    for name in builtin_names() {
        let cfg = builtin(name)?;
        let back = cfg.to_toml().and_then(|t| parse_config(&t));
        if !matches!(back, Ok(ref b) if *b == cfg) {
            bad.push(name);
        }
    }
    line(
        bad.is_empty(),
        format!(
            "config round trip: {} built-ins, mismatched {bad:?}",
            builtin_names().count()
        ),
    );

    for name in scenarios {
        let cfg = builtin(name)?;
        let results = run_scenario(&cfg, RunOptions { cross_check: true })?;
        let worst = summarize(&results)
            .iter()
            .filter_map(|s| s.max_discrepancy)
            .fold(0.0f64, f64::max);
        let unconverged: usize = summarize(&results).iter().map(|s| s.partial + s.failed).sum();
        line(
            worst <= 1e-3 && unconverged == 0,
            format!("cross-check {name}: max de Hoog/Stehfest discrepancy {worst:.2e} (limit 1e-3), {unconverged} points not converged"),
        );
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn dispatch(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::ListBuiltins => {
            for name in builtin_names() {
                let cfg = builtin(name)?;
                println!("{name:<6} {}", cfg.description);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Builtin { name, show, out } => {
            let cfg = builtin(&name)?;
            if show {
                print!("{}", cfg.to_toml()?);
                return Ok(ExitCode::SUCCESS);
            }
            init_threads(cli.threads)?;
            run(cfg, &out)
        }
        Command::Run { config, out } => {
            let cfg = parse_config_file(&config).map_err(|e| match e {
                Error::Io { .. } => Failure::Config(e.to_string()),
                other => other.into(),
            })?;
            init_threads(cli.threads)?;
            run(cfg, &out)
        }
        Command::Check { scenarios } => {
            init_threads(cli.threads)?;
            check(&scenarios)
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Total(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
