use leaky_aquifer::model::{DimensionlessGroups, FieldModel, Medium, ModelControls, Target};
use leaky_aquifer::scenario::{self, CurveResult, RunOptions};
use leaky_aquifer::Error;
use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

fn to_py(e: Error) -> PyErr {
    match e.root() {
        Error::Config(_) | Error::Domain(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// Groups from a dict keyed like the `[dimensionless]` config block.
fn groups_from(d: &Bound<'_, PyDict>) -> PyResult<DimensionlessGroups> {
    let mut table = toml::Table::new();
    for (k, v) in d.iter() {
        let key: String = k.extract()?;
        let value = if let Ok(b) = v.extract::<bool>() {
            toml::Value::Boolean(b)
        } else if let Ok(x) = v.extract::<f64>() {
            toml::Value::Float(x)
        } else if let Ok(s) = v.extract::<String>() {
            toml::Value::String(s)
        } else {
            return Err(PyValueError::new_err(format!(
                "{key}: expected a number, bool or string"
            )));
        };
        table.insert(key, value);
    }
    let g: DimensionlessGroups = table
        .try_into()
        .map_err(|e: toml::de::Error| PyValueError::new_err(format!("groups: {}", e.message())))?;
    g.validate().map_err(to_py)?;
    Ok(g)
}

fn target(z_d: f64, z_d2: Option<f64>, medium: Option<&str>) -> PyResult<Target> {
    let (lo, hi) = match z_d2 {
        Some(z2) => (z_d.min(z2), z_d.max(z2)),
        None => (z_d, z_d),
    };
    let medium = match medium {
        None => Medium::for_interval(lo, hi),
        Some("aquifer") => Medium::Aquifer,
        Some("aquitard") => Medium::Aquitard,
        Some("vadose") => Medium::Vadose,
        Some("spanning") => Medium::Spanning,
        Some(other) => return Err(PyValueError::new_err(format!("unknown medium {other:?}"))),
    };
    Ok(Target::with_medium(medium, lo, hi))
}

fn model(groups: &Bound<'_, PyDict>, r_d: f64) -> PyResult<FieldModel> {
    FieldModel::new(groups_from(groups)?, r_d, ModelControls::default()).map_err(to_py)
}

/// Dimensionless drawdown s_D at each t_s, inverted with de Hoog's method.
#[pyfunction]
#[pyo3(signature = (groups, r_d, z_d, t_s, z_d2=None, medium=None))]
fn drawdown(
    py: Python<'_>,
    groups: &Bound<'_, PyDict>,
    r_d: f64,
    z_d: f64,
    t_s: Vec<f64>,
    z_d2: Option<f64>,
    medium: Option<&str>,
) -> PyResult<Vec<f64>> {
    let m = model(groups, r_d)?;
    let t = target(z_d, z_d2, medium)?;
    t.validate(m.groups()).map_err(to_py)?;
    py.detach(|| {
        t_s.iter()
            .map(|&ts| m.drawdown(&t, ts).map(|v| v.s_d))
            .collect::<Result<Vec<_>, _>>()
    })
    .map_err(to_py)
}

/// The Laplace-domain drawdown at complex p (conjugate to t_s).
#[pyfunction]
#[pyo3(signature = (groups, r_d, z_d, p, z_d2=None, medium=None))]
fn laplace_drawdown(
    groups: &Bound<'_, PyDict>,
    r_d: f64,
    z_d: f64,
    p: Complex64,
    z_d2: Option<f64>,
    medium: Option<&str>,
) -> PyResult<Complex64> {
    let m = model(groups, r_d)?;
    let t = target(z_d, z_d2, medium)?;
    m.laplace(p, &t).map(|v| v.value).map_err(to_py)
}

#[pyfunction]
fn builtin_names() -> Vec<&'static str> {
    scenario::builtin_names().collect()
}

/// Canonical TOML of a built-in scenario.
#[pyfunction]
fn builtin_config(name: &str) -> PyResult<String> {
    scenario::builtin(name).and_then(|c| c.to_toml()).map_err(to_py)
}

fn run(py: Python<'_>, config: &str, cross_check: bool) -> PyResult<Vec<CurveResult>> {
    let cfg = scenario::parse_config(config).map_err(to_py)?;
    py.detach(|| scenario::run_scenario(&cfg, RunOptions { cross_check }))
        .map_err(to_py)
}

/// Run a scenario given as TOML text; one dict of columns per curve.
#[pyfunction]
#[pyo3(signature = (config, cross_check=false))]
fn run_scenario<'py>(py: Python<'py>, config: &str, cross_check: bool) -> PyResult<Bound<'py, PyList>> {
    let out = PyList::empty(py);
    for c in run(py, config, cross_check)? {
        let d = PyDict::new(py);
        d.set_item("label", c.label())?;
        d.set_item("scenario_id", &c.scenario_id)?;
        d.set_item("variant_key", &c.variant_key)?;
        d.set_item("variant_value", c.variant_value)?;
        d.set_item("r_D", c.r_d)?;
        d.set_item("z_D_lo", c.z_lo)?;
        d.set_item("z_D_hi", c.z_hi)?;
        d.set_item("medium", c.medium.name())?;
        d.set_item("t_Bs", c.t_bs)?;
        d.set_item("t_s", c.points.iter().map(|p| p.t_s).collect::<Vec<_>>())?;
        d.set_item("s_D", c.points.iter().map(|p| p.s_d).collect::<Vec<_>>())?;
        d.set_item("s_mD", c.points.iter().map(|p| p.s_md).collect::<Vec<_>>())?;
        d.set_item("flag", c.points.iter().map(|p| p.flag.as_str()).collect::<Vec<_>>())?;
        d.set_item("panels", c.points.iter().map(|p| p.panels).collect::<Vec<_>>())?;
        d.set_item("terms", c.points.iter().map(|p| p.terms).collect::<Vec<_>>())?;
        d.set_item("stehfest", c.points.iter().map(|p| p.stehfest).collect::<Vec<_>>())?;
        out.append(d)?;
    }
    Ok(out)
}

/// Run a scenario and return the CSV table as text.
#[pyfunction]
#[pyo3(signature = (config, cross_check=false))]
fn scenario_csv(py: Python<'_>, config: &str, cross_check: bool) -> PyResult<String> {
    let results = run(py, config, cross_check)?;
    let mut buf = Vec::new();
    scenario::write_csv(&results, &mut buf).map_err(to_py)?;
    String::from_utf8(buf).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pyfunction]
#[pyo3(signature = (config, cross_check=false))]
fn convergence_report(py: Python<'_>, config: &str, cross_check: bool) -> PyResult<String> {
    Ok(scenario::convergence_report(&run(py, config, cross_check)?))
}

#[pymodule]
fn leaky_aquifer_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(drawdown, m)?)?;
    m.add_function(wrap_pyfunction!(laplace_drawdown, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_names, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_config, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(scenario_csv, m)?)?;
    m.add_function(wrap_pyfunction!(convergence_report, m)?)?;
    Ok(())
}
