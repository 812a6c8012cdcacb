//! Python bindings: `import nkdet`.

use std::collections::BTreeMap;

use nkdet_core::determinacy::{gabaix_region_membership, Analytic};
use nkdet_core::family::{analyze as analyze_point, Family, ParamSet};
use nkdet_core::models::GabaixStructural;
use nkdet_core::oracle::all_roots;
use nkdet_core::poly::{budan_fourier_bound as bf_bound, Poly};
use nkdet_core::sweep::{run_sweep, write_csv, Axis, SweepSpec};
use nkdet_core::verify::{verify as run_verify, Suite};
use nkdet_core::Tolerances;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Tolerances from optional overrides; non-positive values are rejected.
pub fn tolerances(
    zero_tol: Option<f64>,
    boundary_tol: Option<f64>,
    exact: bool,
) -> Result<Tolerances, String> {
    let mut t = Tolerances::default().with_exact(exact);
    if let Some(z) = zero_tol {
        if !(z > 0.0) {
            return Err(format!("zero_tol must be > 0, got {z}"));
        }
        t = t.with_zero_tol(z);
    }
    if let Some(b) = boundary_tol {
        if !(b > 0.0) {
            return Err(format!("boundary_tol must be > 0, got {b}"));
        }
        t = t.with_boundary_tol(b);
    }
    Ok(t)
}

/// Builds the structural record from a name-value map; every field is
/// required.
pub fn structural(params: &BTreeMap<String, f64>) -> Result<GabaixStructural, String> {
    let get = |n: &str| {
        params
            .get(n)
            .copied()
            .ok_or_else(|| format!("missing parameter {n}"))
    };
    const NAMES: [&str; 12] = [
        "k", "sigma", "alpha", "alpha_f", "beta", "beta_f", "m", "eta", "rho", "chi", "phi_x",
        "phi_pi",
    ];
    if let Some(extra) = params.keys().find(|k| !NAMES.contains(&k.as_str())) {
        return Err(format!("unknown parameter {extra}"));
    }
    Ok(GabaixStructural {
        k: get("k")?,
        sigma: get("sigma")?,
        alpha: get("alpha")?,
        alpha_f: get("alpha_f")?,
        beta: get("beta")?,
        beta_f: get("beta_f")?,
        m: get("m")?,
        eta: get("eta")?,
        rho: get("rho")?,
        chi: get("chi")?,
        phi_x: get("phi_x")?,
        phi_pi: get("phi_pi")?,
    })
}

/// Family names accepted by `analyze` and `sweep`.
#[pyfunction]
fn families() -> Vec<&'static str> {
    Family::ALL.iter().map(|f| f.name()).collect()
}

/// Single-point analysis. Returns a dict with the verdict, the condition,
/// the polynomial (descending), the oracle roots and the unit-disk counts.
#[pyfunction]
#[pyo3(signature = (family, params, *, zero_tol=None, boundary_tol=None, exact=false))]
fn analyze<'py>(
    py: Python<'py>,
    family: &str,
    params: ParamSet,
    zero_tol: Option<f64>,
    boundary_tol: Option<f64>,
    exact: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let tol = tolerances(zero_tol, boundary_tol, exact).map_err(value_error)?;
    let r = analyze_point(family, &params, &tol).map_err(value_error)?;
    let d = &r.detail;
    let out = PyDict::new(py);
    out.set_item("family", r.point.family().name())?;
    out.set_item("verdict", r.outcome.token())?;
    out.set_item("condition", &r.condition)?;
    out.set_item("charpoly", d.system.charpoly.descending())?;
    out.set_item("poly_of_inverse", d.system.poly_of_inverse)?;
    out.set_item("roots", d.roots.roots.clone())?;
    out.set_item("inside", d.profile.inside)?;
    out.set_item("outside", d.profile.outside)?;
    out.set_item("boundary", d.profile.boundary)?;
    out.set_item("oracle_verdict", d.oracle.outcome.token())?;
    out.set_item("agreement", d.status.to_string())?;
    let certainty = match &d.analytic {
        Analytic::Exact(_) => None,
        Analytic::OneSided(c) => Some(format!("{:?}", c.certainty)),
        Analytic::Necessary(b) => Some(format!("{:?}", b.verdict.certainty)),
    };
    out.set_item("certainty", certainty)?;
    out.set_item("analytic_condition", d.analytic.condition())?;
    let tables: Vec<(f64, Vec<f64>, usize)> = r
        .tables
        .iter()
        .map(|t| (t.at, t.values.clone(), t.variations))
        .collect();
    out.set_item("fourier", tables)?;
    if let Some(m) = &d.system.matrix {
        out.set_item("matrix", m.rows.to_vec())?;
    }
    Ok(out)
}

/// Grid sweep; returns the CSV text. `axes` holds one or two
/// `(name, start, stop, step)` tuples.
#[pyfunction]
#[pyo3(signature = (family, fixed, axes, *, zero_tol=None, boundary_tol=None, exact=false))]
fn sweep(
    family: &str,
    fixed: ParamSet,
    axes: Vec<(String, f64, f64, f64)>,
    zero_tol: Option<f64>,
    boundary_tol: Option<f64>,
    exact: bool,
) -> PyResult<String> {
    let tol = tolerances(zero_tol, boundary_tol, exact).map_err(value_error)?;
    let spec = SweepSpec {
        family: family.parse().map_err(value_error)?,
        fixed: fixed
            .into_iter()
            .map(|(k, v)| (nkdet_core::family::canonical_param(&k), v))
            .collect(),
        axes: axes
            .iter()
            .map(|(n, a, b, s)| Axis::new(n, *a, *b, *s))
            .collect(),
    };
    let rows = run_sweep(&spec, &tol).map_err(value_error)?;
    let mut buf = Vec::new();
    write_csv(&spec, &rows, &mut buf).map_err(value_error)?;
    String::from_utf8(buf).map_err(value_error)
}

/// Seeded verification. Returns `{suite: {"agree", "disagree", "skipped"}}`.
#[pyfunction]
#[pyo3(signature = (suites=None, samples=1000, seed=42, *, zero_tol=None, boundary_tol=None, exact=false))]
fn verify<'py>(
    py: Python<'py>,
    suites: Option<Vec<String>>,
    samples: usize,
    seed: u64,
    zero_tol: Option<f64>,
    boundary_tol: Option<f64>,
    exact: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let tol = tolerances(zero_tol, boundary_tol, exact).map_err(value_error)?;
    let suites: Vec<Suite> = match suites {
        None => Suite::all(),
        Some(v) => v
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, _>>()
            .map_err(value_error)?,
    };
    let report = py
        .detach(|| run_verify(&suites, samples, seed, &tol))
        .map_err(value_error)?;
    let out = PyDict::new(py);
    for (s, t) in &report.tallies {
        let row = PyDict::new(py);
        row.set_item("agree", t.agree)?;
        row.set_item("disagree", t.disagree)?;
        row.set_item("skipped", t.skipped_total())?;
        out.set_item(s.name(), row)?;
    }
    Ok(out)
}

/// Budan–Fourier bound on `(a, b)` for coefficients in descending order.
/// Returns `(max_roots, parity_fixed)`.
#[pyfunction]
#[pyo3(signature = (coeffs, a, b, zero_tol=1e-9))]
fn budan_fourier_bound(coeffs: Vec<f64>, a: f64, b: f64, zero_tol: f64) -> PyResult<(usize, bool)> {
    let bound = bf_bound(&Poly::from_descending(&coeffs), a, b, zero_tol).map_err(value_error)?;
    Ok((bound.max_roots, bound.parity_fixed))
}

/// All complex roots, coefficients in descending order.
#[pyfunction]
fn roots(coeffs: Vec<f64>) -> PyResult<Vec<num_complex::Complex64>> {
    let rs = all_roots(&Poly::from_descending(&coeffs)).map_err(value_error)?;
    rs.require_converged().map_err(value_error)?;
    Ok(rs.roots)
}

/// Membership of a structural point in the determinacy-region
/// layers. Returns the certainty and the margin of each layer.
#[pyfunction]
#[pyo3(signature = (params, *, zero_tol=None))]
fn gabaix_region<'py>(
    py: Python<'py>,
    params: BTreeMap<String, f64>,
    zero_tol: Option<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let tol = tolerances(zero_tol, None, false).map_err(value_error)?;
    let s = structural(&params).map_err(value_error)?;
    let r = gabaix_region_membership(&s, &tol).map_err(value_error)?;
    let out = PyDict::new(py);
    out.set_item("certainty", format!("{:?}", r.certainty))?;
    out.set_item("boundary", r.boundary)?;
    let names = [
        &r.necessary.name,
        &r.inner_b_minus_c.name,
        &r.inner_b.name,
        &r.inner_sum.name,
    ];
    let layers = PyDict::new(py);
    for (n, e) in names.iter().zip(&r.evaluations) {
        layers.set_item(n.as_str(), (format!("{:?}", e.truth), e.margin))?;
    }
    out.set_item("layers", layers)?;
    Ok(out)
}

#[pymodule]
fn nkdet(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(families, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(budan_fourier_bound, m)?)?;
    m.add_function(wrap_pyfunction!(roots, m)?)?;
    m.add_function(wrap_pyfunction!(gabaix_region, m)?)?;
    Ok(())
}
