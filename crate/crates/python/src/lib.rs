//! Python bindings. Models and numerators are passed as the same JSON
//! descriptors the CLI reads; complex values are Python `complex`.

use branching_core::continuation::{
    continue_integral as core_continue, continue_pole, path_difference as core_difference, pole_trajectory,
    ContinuationOptions, Numerator,
};
use branching_core::eisenstein::{completed_eisenstein as core_eisenstein, UpperHalfPoint};
use branching_core::paths::{crosses_origin as core_crosses, radicand_curve as core_curve, WPath};
use branching_core::spectral::{ModelDescriptor, SpectralModel};
use branching_core::verify::{run_suite as core_run_suite, VerifyOptions, DEFAULT_SEED};
use branching_core::{Complex64, Error};
use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

create_exception!(branching, NumericalError, PyArithmeticError);

fn py_err(e: Error) -> PyErr {
    if e.is_numerical() {
        NumericalError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn model(json: &str) -> PyResult<SpectralModel> {
    ModelDescriptor::parse(json).map_err(py_err)
}

fn numerator(json: &str) -> PyResult<Numerator> {
    Numerator::parse(json).map_err(py_err)
}

fn path(points: Vec<Complex64>, label: &str) -> PyResult<WPath> {
    WPath::new(points, label).map_err(py_err)
}

fn options(t_max: f64, tol: f64) -> ContinuationOptions {
    ContinuationOptions { t_max, tol, ..ContinuationOptions::default() }
}

/// `[re, im]` pairs come back as `complex`; everything else maps one to one.
fn to_py(py: Python<'_>, v: &Value) -> PyObject {
    match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_py(py),
        Value::Number(n) => match n.as_i64() {
            Some(i) if !n.is_f64() => i.into_py(py),
            _ => n.as_f64().unwrap_or(f64::NAN).into_py(py),
        },
        Value::String(s) => s.into_py(py),
        Value::Array(a) if a.len() == 2 && a.iter().all(|x| x.as_f64().is_some_and(|_| x.is_f64())) => {
            Complex64::new(a[0].as_f64().unwrap(), a[1].as_f64().unwrap()).into_py(py)
        }
        Value::Array(a) => PyList::new_bound(py, a.iter().map(|x| to_py(py, x))).into_py(py),
        Value::Object(m) => {
            let d = PyDict::new_bound(py);
            for (k, x) in m {
                d.set_item(k, to_py(py, x)).expect("str keys");
            }
            d.into_py(py)
        }
    }
}

/// The pair `½ ± i√c`, upper first.
#[pyfunction]
fn branch_points(model_json: &str) -> PyResult<(Complex64, Complex64)> {
    model(model_json)?.branch_points().map_err(py_err)
}

/// Principal poles `(s₊, s₋)` at `w`.
#[pyfunction]
fn poles(model_json: &str, w: Complex64) -> PyResult<(Complex64, Complex64)> {
    let p = model(model_json)?.poles(w).map_err(py_err)?;
    Ok((p.s_plus, p.s_minus))
}

/// Tracks the pole along the polyline; returns `{crossings, final_sign, s}`.
#[pyfunction]
#[pyo3(signature = (model_json, points, t_max = 30.0, tol = 1e-11))]
fn trace(py: Python<'_>, model_json: &str, points: Vec<Complex64>, t_max: f64, tol: f64) -> PyResult<PyObject> {
    let m = model(model_json)?;
    let p = path(points, "path")?;
    let t = py.allow_threads(|| continue_pole(&m, &p, &options(t_max, tol))).map_err(py_err)?;
    let d = PyDict::new_bound(py);
    d.set_item("crossings", t.cut_crossings)?;
    d.set_item("final_sign", i32::from(t.final_sign))?;
    d.set_item("s", pole_trajectory(&t))?;
    d.set_item("w", t.w_samples.samples.clone())?;
    Ok(d.into_py(py))
}

/// Continued value at the end of the polyline, with its corrections.
#[pyfunction]
#[pyo3(signature = (model_json, numerator_json, points, t_max = 30.0, tol = 1e-11))]
fn continue_integral(
    py: Python<'_>,
    model_json: &str,
    numerator_json: &str,
    points: Vec<Complex64>,
    t_max: f64,
    tol: f64,
) -> PyResult<PyObject> {
    let (m, n) = (model(model_json)?, numerator(numerator_json)?);
    let p = path(points, "path")?;
    let r = py.allow_threads(|| core_continue(&n, &m, &p, &options(t_max, tol))).map_err(py_err)?;
    Ok(to_py(py, &r.to_json_value()))
}

/// `(numeric, closed_form)` for two paths with a common end; `closed_form` is
/// `None` when neither or both moved the pole across.
#[pyfunction]
#[pyo3(signature = (model_json, numerator_json, path1, path2, t_max = 30.0, tol = 1e-11))]
fn path_difference(
    py: Python<'_>,
    model_json: &str,
    numerator_json: &str,
    path1: Vec<Complex64>,
    path2: Vec<Complex64>,
    t_max: f64,
    tol: f64,
) -> PyResult<(Complex64, Option<Complex64>)> {
    let (m, n) = (model(model_json)?, numerator(numerator_json)?);
    let (p1, p2) = (path(path1, "path1")?, path(path2, "path2")?);
    let (numeric, term) =
        py.allow_threads(|| core_difference(&n, &m, &p1, &p2, &options(t_max, tol))).map_err(py_err)?;
    Ok((numeric, term.map(|t| t.term_value)))
}

/// Radicand samples for `w = ½ + σ + iα‖t‖` and the parabola `x = a2·y² + c0`.
#[pyfunction]
#[pyo3(signature = (t_norm, alpha, sigma = (1.0, -1.0), step = 0.01))]
fn radicand_curve(py: Python<'_>, t_norm: f64, alpha: f64, sigma: (f64, f64), step: f64) -> PyResult<PyObject> {
    let c = core_curve(t_norm, alpha, sigma, step).map_err(py_err)?;
    let d = PyDict::new_bound(py);
    d.set_item("sigma", c.sigma)?;
    d.set_item("samples", c.samples.samples)?;
    d.set_item("a2", c.parabola.a2)?;
    d.set_item("c0", c.parabola.c0)?;
    Ok(d.into_py(py))
}

#[pyfunction]
fn crosses_origin(t_norm: f64, alpha: f64) -> PyResult<bool> {
    core_crosses(t_norm, alpha).map_err(py_err)
}

/// Completed Eisenstein series `E*(s, z)` for SL2(Z).
#[pyfunction]
#[pyo3(signature = (s, z, terms = 30))]
fn completed_eisenstein(s: Complex64, z: Complex64, terms: usize) -> PyResult<Complex64> {
    let z = UpperHalfPoint::from_complex(z).map_err(py_err)?;
    core_eisenstein(s, z, terms).map_err(py_err)
}

/// Runs one verification suite; returns its report as a dict.
#[pyfunction]
#[pyo3(signature = (name, seed = DEFAULT_SEED))]
fn run_suite(py: Python<'_>, name: &str, seed: u64) -> PyResult<PyObject> {
    let r = py.allow_threads(|| core_run_suite(name, &VerifyOptions { seed })).map_err(py_err)?;
    let v = serde_json::to_value(&r).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(to_py(py, &v))
}

#[pymodule]
fn branching(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("NumericalError", m.py().get_type_bound::<NumericalError>())?;
    m.add_function(wrap_pyfunction!(branch_points, m)?)?;
    m.add_function(wrap_pyfunction!(poles, m)?)?;
    m.add_function(wrap_pyfunction!(trace, m)?)?;
    m.add_function(wrap_pyfunction!(continue_integral, m)?)?;
    m.add_function(wrap_pyfunction!(path_difference, m)?)?;
    m.add_function(wrap_pyfunction!(radicand_curve, m)?)?;
    m.add_function(wrap_pyfunction!(crosses_origin, m)?)?;
    m.add_function(wrap_pyfunction!(completed_eisenstein, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
