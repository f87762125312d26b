//! Acceptance criteria 1–8. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::time::Instant;

use leaky_aquifer::model::{
    hankel_round_trip, DimensionlessGroups, FieldModel, Medium, ModelControls, Target, WaterTable,
};
use leaky_aquifer::scenario::{builtin, builtin_names, run_scenario, CurveResult, Flag, RunOptions};
use leaky_aquifer::special::{bessel_modified_general, j0, BesselOrder};
use leaky_aquifer::transform::{
    integrate_oscillatory, invert_laplace_dehoog, invert_laplace_stehfest, LaplaceConfig, OscillatoryQuadConfig,
};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn log_times(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| 10f64.powf(lo + (hi - lo) * k as f64 / (n - 1) as f64))
        .collect()
}

/// E1(u) = W(u): ascending series for u ≤ 1, continued fraction above.
fn well_function(u: f64) -> f64 {
    if u <= 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..300 {
            term *= -u / k as f64;
            sum += term / k as f64;
            if (term / k as f64).abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        return -0.577_215_664_901_532_9 - u.ln() - sum;
    }
    // modified Lentz on e^u E1(u) = 1/(u+1− 1/(u+3− 4/(u+5− ...)))
    let tiny = 1e-300;
    let mut f = tiny;
    let mut c = f;
    let mut d = 0.0;
    for k in 0..300 {
        let (a, b) = if k == 0 {
            (1.0, u + 1.0)
        } else {
            (-((k * k) as f64), u + 1.0 + 2.0 * k as f64)
        };
        d = b + a * d;
        d = if d.abs() < tiny { tiny } else { d };
        c = b + a / c;
        c = if c.abs() < tiny { tiny } else { c };
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    f * (-u).exp()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn theis() -> Outcome {
    let g = DimensionlessGroups {
        k_d: 1.0,
        r_kr: 0.0,
        r_kz: 0.0,
        r_ss: 0.01,
        r_b: f64::INFINITY,
        rw_b: 1e-6,
        c_wd: 0.0,
        d_d: 0.0,
        l_d: 1.0,
        a_kd: 10.0,
        a_cd: 10.0,
        psi_ad: 0.0,
        psi_kd: 0.0,
        s_d: 0.0,
        l_vadose: f64::INFINITY,
        water_table: WaterTable::Instantaneous,
        impermeable_base: false,
    };
    let m = FieldModel::new(g, 1.0, ModelControls::default()).unwrap();
    let times = log_times(-1.0, 3.0, 30);
    let worst = times
        .par_iter()
        .map(|&t| {
            let s = m.drawdown(&Target::point(0.5), t).unwrap().s_d;
            rel(s, well_function(1.0 / (4.0 * t)))
        })
        .reduce(|| 0.0, f64::max);
    outcome(
        worst <= 1e-3,
        format!("max relative error vs W(u) {worst:.2e} over 30 times (limit 1e-3)"),
    )
}

fn no_leak() -> Outcome {
    let mut worst = 0.0f64;
    let mut points = 0;
    for name in ["fig2a", "fig2b"] {
        let mut cfg = builtin(name).unwrap();
        let g = cfg.dimensionless.as_mut().unwrap();
        g.r_kr = 0.0;
        g.r_kz = 0.0;
        let res = run_scenario(&cfg, RunOptions::default()).unwrap();
        let (leak, closed) = (&res[0], &res[1]);
        assert_eq!((leak.variant_value, closed.variant_value), (Some(0.0), Some(1.0)));
        for (a, b) in leak.points.iter().zip(&closed.points) {
            worst = worst.max(rel(a.s_d, b.s_d));
            points += 1;
        }
    }
    outcome(
        worst <= 1e-6,
        format!("max relative difference R_K = 0 vs impermeable base {worst:.2e} over {points} points (limit 1e-6)"),
    )
}

fn round_trip() -> Outcome {
    let mut rng = StdRng::seed_from_u64(20_240_901);
    let cfg = builtin("fig2b").unwrap();
    let g = cfg.base_groups().unwrap();
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let r_d = 10f64.powf(rng.random_range(-1.0..0.5));
        let z_d = if rng.random_bool(0.5) { 1.0 } else { 0.0 };
        let p = 10f64.powf(rng.random_range(-2.0..1.0));
        let rt = hankel_round_trip(&g, r_d, z_d, p, &cfg.numerics.series, &cfg.numerics.quadrature).unwrap();
        worst = worst.max(rt.rel_error());
    }
    outcome(
        worst <= 1e-4,
        format!("max relative error {worst:.2e} at 10 random nodes (limit 1e-4)"),
    )
}

fn continuity() -> Outcome {
    let mut jobs = Vec::new();
    for name in ["fig2b", "fig7"] {
        let cfg = builtin(name).unwrap();
        let r_d = cfg.observations[0].r_d;
        for v in cfg.variants().unwrap() {
            let m = FieldModel::new(v.groups, r_d, cfg.numerics).unwrap();
            for t in cfg.time_grid.times() {
                jobs.push((m.clone(), t));
            }
        }
    }
    let (base, top) = jobs
        .par_iter()
        .map(|(m, t)| {
            let at = |tg: Target| m.drawdown(&tg, *t).unwrap().s_d;
            // no aquitard side below an impermeable base
            let base = if m.groups().impermeable_base {
                0.0
            } else {
                (at(Target::point(0.0)) - at(Target::with_medium(Medium::Aquitard, 0.0, 0.0))).abs()
            };
            let top = (at(Target::point(1.0)) - at(Target::with_medium(Medium::Vadose, 1.0, 1.0))).abs();
            (base, top)
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));
    outcome(
        base <= 1e-4 && top <= 1e-4,
        format!(
            "max jump at aquifer base {base:.2e}, at water table {top:.2e} over {} times (limit 1e-4 in s_D)",
            jobs.len()
        ),
    )
}

fn cross_inversion() -> Outcome {
    let mut worst = (0.0f64, String::new());
    let mut converged = 0;
    let mut other = 0;
    for name in builtin_names() {
        let res = run_scenario(&builtin(name).unwrap(), RunOptions { cross_check: true }).unwrap();
        for c in &res {
            for p in &c.points {
                if p.flag != Flag::Converged {
                    other += 1;
                    continue;
                }
                converged += 1;
                let d = p.discrepancy().unwrap_or(f64::INFINITY);
                if d > worst.0 {
                    worst = (d, format!("{} t_s={:.2e}", c.label(), p.t_s));
                }
            }
        }
    }
    outcome(
        worst.0 <= 1e-3,
        format!(
            "max de Hoog/Stehfest discrepancy {:.2e} at {} over {converged} converged points, {other} not converged (limit 1e-3)",
            worst.0, worst.1
        ),
    )
}

fn by_value(res: &[CurveResult]) -> Vec<&CurveResult> {
    let mut v: Vec<&CurveResult> = res.iter().collect();
    v.sort_by(|a, b| a.variant_value.partial_cmp(&b.variant_value).unwrap());
    v
}

/// First t_s at which a curve reaches `level`, by log–log interpolation.
fn arrival(c: &CurveResult, level: f64) -> Option<f64> {
    c.points.windows(2).find_map(|w| {
        let (a, b) = (&w[0], &w[1]);
        (a.s_d < level && b.s_d >= level).then(|| {
            let f = (level.ln() - a.s_d.ln()) / (b.s_d.ln() - a.s_d.ln());
            (a.t_s.ln() + f * (b.t_s.ln() - a.t_s.ln())).exp()
        })
    })
}

fn orderings() -> Outcome {
    let run = |name: &str| run_scenario(&builtin(name).unwrap(), RunOptions::default()).unwrap();
    let mut notes = Vec::new();
    let mut pass = true;

    // (a) intermediate times 10 ≤ t_s ≤ 1e4
    let res = run("fig3a");
    let curves = by_value(&res);
    let mut violations = 0;
    for (i, p) in curves[0].points.iter().enumerate() {
        if !(10.0..=1e4).contains(&p.t_s) {
            continue;
        }
        for w in curves.windows(2) {
            if w[1].points[i].s_d > w[0].points[i].s_d * (1.0 + 1e-9) {
                violations += 1;
            }
        }
    }
    pass &= violations == 0;
    notes.push(format!("(a) {violations} increases in R_Kz"));

    // (b) larger C_wD: less drawdown at every time and a later arrival
    let res = run("fig7");
    let curves = by_value(&res);
    let mut violations = 0;
    for w in curves.windows(2) {
        for (a, b) in w[0].points.iter().zip(&w[1].points) {
            if b.s_d > a.s_d * (1.0 + 1e-9) {
                violations += 1;
            }
        }
    }
    let level = 1e-2;
    let arrivals: Vec<Option<f64>> = curves.iter().map(|c| arrival(c, level)).collect();
    let later = arrivals
        .windows(2)
        .all(|w| matches!((w[0], w[1]), (Some(a), Some(b)) if b > a));
    pass &= violations == 0 && later;
    let shown: Vec<String> = arrivals
        .iter()
        .map(|a| a.map_or("none".into(), |t| format!("{t:.3e}")))
        .collect();
    notes.push(format!(
        "(b) {violations} increases in C_wD, s_D = 1e-2 reached at t_s [{}]",
        shown.join(", ")
    ));

    // (c) R_b = 8 vs 16
    let res = run("fig6");
    let pick = |v: f64| res.iter().find(|c| c.variant_value == Some(v)).unwrap();
    let diff = pick(8.0)
        .points
        .iter()
        .zip(&pick(16.0).points)
        .map(|(a, b)| rel(a.s_d, b.s_d))
        .fold(0.0, f64::max);
    pass &= diff < 0.01;
    notes.push(format!("(c) R_b 8 vs 16 max {:.3}%", 100.0 * diff));

    // (d) isotropic 1e-2 vs no leakage
    let res = run("fig5");
    let pick = |v: f64| res.iter().find(|c| c.variant_value == Some(v)).unwrap();
    let dev = pick(1e-2)
        .points
        .iter()
        .zip(&pick(0.0).points)
        .map(|(a, b)| rel(a.s_d, b.s_d))
        .fold(0.0, f64::max);
    pass &= dev < 0.05;
    notes.push(format!("(d) R_K = 1e-2 vs 0 max {:.2}%", 100.0 * dev));

    outcome(pass, notes.join("; "))
}

fn storage_slope() -> Outcome {
    let cfg = builtin("fig7").unwrap();
    let mut g = cfg.base_groups().unwrap();
    g.c_wd = 1e3;
    // well face: r_D = r_w/b, averaged over the screen
    let m = FieldModel::new(g, g.rw_b, cfg.numerics).unwrap();
    let target = Target::interval(g.d_d, g.l_d);
    let times = log_times(-3.0, -1.0, 9);
    let pts: Vec<(f64, f64)> = times
        .iter()
        .map(|&t| (t.ln(), m.drawdown(&target, t).unwrap().s_d.ln()))
        .collect();
    let n = pts.len() as f64;
    let (mx, my) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0 / n, a.1 + p.1 / n));
    let (sxy, sxx) = pts.iter().fold((0.0, 0.0), |a, p| {
        (a.0 + (p.0 - mx) * (p.1 - my), a.1 + (p.0 - mx).powi(2))
    });
    let slope = sxy / sxx;
    outcome(
        (slope - 1.0).abs() <= 0.02,
        format!("log-log slope {slope:.4} over t_s in [1e-3, 1e-1] (target 1.00 +- 0.02)"),
    )
}

fn special_functions() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let nu = rng.random_range(0.0..5.0);
        let x = rng.random_range(0.1..30.0);
        let z = Complex64::new(x, 0.0);
        let p = bessel_modified_general(BesselOrder::new(nu).unwrap(), z).unwrap();
        let w = ((p.i_nu * p.k_nu1).value() + (p.i_nu1 * p.k_nu).value()) * z;
        worst = worst.max((w - 1.0).norm());
    }

    let e = invert_laplace_dehoog(|p| Ok(1.0 / (p + 1.0)), 1.0, &LaplaceConfig::default()).unwrap();
    let dh = rel(e, (-1.0f64).exp());
    let st = rel(
        invert_laplace_stehfest(|p| Ok(p.powf(-1.5)), 1.0, 14).unwrap(),
        2.0 / std::f64::consts::PI.sqrt(),
    );
    let cfg = OscillatoryQuadConfig::default();
    let h1 = integrate_oscillatory(|y| Ok(Complex64::new((-y).exp() * j0(y), 0.0)), 1.0, &cfg)
        .unwrap()
        .value;
    let h1 = rel(h1.re, std::f64::consts::FRAC_1_SQRT_2);
    // K0(1) to 16 digits
    let h2 = integrate_oscillatory(|y| Ok(Complex64::new(y / (y * y + 1.0) * j0(y), 0.0)), 1.0, &cfg)
        .unwrap()
        .value;
    let h2 = rel(h2.re, 0.421_024_438_240_708_3);

    let pass = worst <= 1e-9 && dh <= 1e-8 && st <= 1e-5 && h1 <= 1e-8 && h2 <= 1e-7;
    outcome(
        pass,
        format!(
            "Wronskian max {worst:.1e} over 1000 samples (1e-9); de Hoog e^-t {dh:.1e} (1e-8); \
             Stehfest t^1/2 {st:.1e} (1e-5); Hankel e^-y {h1:.1e} (1e-8); Hankel K0 {h2:.1e} (1e-7)"
        ),
    )
}

type Criterion = (usize, &'static str, Option<f64>, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "Theis limit", Some(10.0), theis),
        (2, "no-leak reduction", Some(60.0), no_leak),
        (3, "Hankel round trip", Some(30.0), round_trip),
        (4, "interface continuity", None, continuity),
        (5, "cross-inversion", None, cross_inversion),
        (6, "figure orderings", None, orderings),
        (7, "wellbore-storage slope", None, storage_slope),
        (8, "special functions", Some(5.0), special_functions),
    ];
    let mut failed = Vec::new();
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check);
        let secs = start.elapsed().as_secs_f64();
        let (mut pass, mut detail) = match result {
            Ok(o) => (o.pass, o.detail),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                (false, format!("panicked: {msg}"))
            }
        };
        if let Some(limit) = budget {
            if secs > limit {
                pass = false;
                detail.push_str(&format!("; runtime over {limit} s"));
            }
        }
        println!(
            "{} criterion {id} ({name}): {detail} [{secs:.1} s]",
            if pass { "PASS" } else { "FAIL" }
        );
        if !pass {
            failed.push(id);
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
