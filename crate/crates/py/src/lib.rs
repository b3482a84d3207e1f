//! Python bindings. Structured results cross the boundary as plain dicts and lists.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

use tschirn_core::arith::LaurentPoly;
use tschirn_core::birkhoff::{self, TransitionMatrix};
use tschirn_core::geometry::{self, DivisorClass, SurfaceModel};
use tschirn_core::instances::{self, PlaneCurve, Smoothness};
use tschirn_core::pipeline::{self, PipelineError, VerifyOptions};
use tschirn_core::polymat::Matrix;

fn to_py<T: Serialize>(py: Python<'_>, v: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn from_py<T: DeserializeOwned>(obj: &Bound<'_, PyAny>) -> PyResult<T> {
    let text: String = obj.py().import("json")?.call_method1("dumps", (obj,))?.extract()?;
    serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn pipeline_err(e: PipelineError) -> PyErr {
    match e.exit_code() {
        3 => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A curve `Σ c_i(x) w^i = 0` on the Hirzebruch surface `F_e`.
#[pyclass(name = "CoxCurve", module = "tschirn", from_py_object)]
#[derive(Clone)]
struct PyCoxCurve {
    inner: instances::CoxCurve,
}

#[pymethods]
impl PyCoxCurve {
    /// `coefficients[i]` lists the coefficients of `c_i`, constant term first; entries are
    /// integers or strings such as `"-3/4"`.
    #[new]
    fn new(m: usize, e: i64, delta: i64, coefficients: &Bound<'_, PyAny>) -> PyResult<Self> {
        let coeffs = from_py(coefficients)?;
        instances::CoxCurve::new(m, e, delta, coeffs)
            .map(|inner| PyCoxCurve { inner })
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        instances::CoxCurve::from_json(text)
            .map(|inner| PyCoxCurve { inner })
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// A seeded smooth random curve with connected cover.
    #[staticmethod]
    #[pyo3(signature = (m, e, delta, seed, bound = 5))]
    fn random(m: usize, e: i64, delta: i64, seed: u64, bound: i64) -> PyResult<Self> {
        instances::random_instance(m, e, delta, seed, bound)
            .map(|g| PyCoxCurve { inner: g.curve })
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn e(&self) -> i64 {
        self.inner.e()
    }

    #[getter]
    fn delta(&self) -> i64 {
        self.inner.delta()
    }

    fn is_smooth(&self) -> bool {
        instances::smoothness_check(&self.inner).is_smooth()
    }

    /// `None` when smooth, otherwise the singular witness.
    fn singular_witness(&self, py: Python<'_>) -> PyResult<Option<Py<PyAny>>> {
        match instances::smoothness_check(&self.inner) {
            Smoothness::Smooth => Ok(None),
            Smoothness::Singular(w) => Ok(Some(to_py(py, &w)?)),
        }
    }

    /// Base coordinate of the point on the negative section (`"inf"` for infinity).
    fn base_point(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let q = instances::base_point(&self.inner).map_err(|e| PyValueError::new_err(e.to_string()))?;
        to_py(py, &q)
    }

    fn structure_splitting(&self) -> PyResult<Vec<i64>> {
        pipeline::structure_splitting(&self.inner).map(Vec::from).map_err(pipeline_err)
    }

    fn twisted_splitting(&self) -> PyResult<Vec<i64>> {
        pipeline::twisted_splitting(&self.inner).map(Vec::from).map_err(pipeline_err)
    }

    fn __repr__(&self) -> String {
        format!("CoxCurve(m={}, e={}, delta={})", self.inner.m(), self.inner.e(), self.inner.delta())
    }
}

/// Predicted splitting types and genus for `(m, e, δ, γ)`.
#[pyfunction]
#[pyo3(signature = (m, e, delta = 0, gamma = 0))]
fn predict(py: Python<'_>, m: i64, e: i64, delta: i64, gamma: u32) -> PyResult<Py<PyAny>> {
    if m < 2 || e < 1 || !(0..=1).contains(&delta) {
        return Err(PyValueError::new_err("need m >= 2, e >= 1 and delta in {0, 1}"));
    }
    let surface = SurfaceModel::new(gamma, e, delta).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let value = serde_json::json!({
        "structure": geometry::predict_thm_a(m, e, delta, gamma).degrees,
        "twisted": geometry::predict_thm_b(m, e, delta, gamma).degrees,
        "tschirnhausen": geometry::predict_tschirnhausen(m, e, delta, gamma).degrees,
        "genus": geometry::adjunction_genus(DivisorClass::m_secant(m, e, delta), &surface),
    });
    to_py(py, &value)
}

/// Full verification report for a curve.
#[pyfunction]
#[pyo3(signature = (curve, check_smoothness = true))]
fn verify(py: Python<'_>, curve: &PyCoxCurve, check_smoothness: bool) -> PyResult<Py<PyAny>> {
    let opts = VerifyOptions { check_smoothness, ..Default::default() };
    let report = py.detach(|| pipeline::verify_curve(&curve.inner, &opts)).map_err(pipeline_err)?;
    to_py(py, &report)
}

/// Verification report for a plane curve given in the JSON file format.
#[pyfunction]
fn verify_plane(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    let c = PlaneCurve::from_json(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let report = py.detach(|| pipeline::verify_plane(&c, &VerifyOptions::default())).map_err(pipeline_err)?;
    to_py(py, &report)
}

fn transition(rows: &Bound<'_, PyAny>) -> PyResult<TransitionMatrix> {
    let rows: Vec<Vec<LaurentPoly>> = from_py(rows)?;
    let m = Matrix::from_rows(rows).map_err(|e| PyValueError::new_err(e.to_string()))?;
    TransitionMatrix::new(m).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Birkhoff factorization of a matrix of Laurent polynomials, each entry written as
/// `[lowest_exponent, [coefficients...]]`.
#[pyfunction]
fn factorize(py: Python<'_>, rows: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
    let t = transition(rows)?;
    let f = birkhoff::factorize(&t).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    to_py(py, &f)
}

#[pyfunction]
fn splitting_type(rows: &Bound<'_, PyAny>) -> PyResult<Vec<i64>> {
    let t = transition(rows)?;
    birkhoff::splitting_type(&t).map(Vec::from).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pyfunction]
fn h0(rows: &Bound<'_, PyAny>, k: i64) -> PyResult<u64> {
    let t = transition(rows)?;
    birkhoff::h0_oracle(&t, k).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn class(s: &str, e: i64) -> PyResult<DivisorClass> {
    DivisorClass::parse(s, e).ok_or_else(|| PyValueError::new_err(format!("cannot parse divisor class {s:?}")))
}

#[pyfunction]
#[pyo3(signature = (d1, d2, e, gamma = 0))]
fn intersect(d1: &str, d2: &str, e: i64, gamma: u32) -> PyResult<i64> {
    let s = SurfaceModel::new(gamma, e, 0).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(geometry::intersect(class(d1, e)?, class(d2, e)?, &s))
}

#[pyfunction]
#[pyo3(signature = (class_str, e, gamma = 0))]
fn adjunction_genus(class_str: &str, e: i64, gamma: u32) -> PyResult<i64> {
    let s = SurfaceModel::new(gamma, e, 0).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(geometry::adjunction_genus(class(class_str, e)?, &s))
}

/// `(direct, r1)` degree lists for `O_B(k)`.
#[pyfunction]
fn pushforward(k: i64, e: i64) -> (Vec<i64>, Vec<i64>) {
    geometry::pushforward_ok(k, e)
}

#[pymodule]
fn tschirn(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCoxCurve>()?;
    m.add_function(wrap_pyfunction!(predict, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_plane, m)?)?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    m.add_function(wrap_pyfunction!(splitting_type, m)?)?;
    m.add_function(wrap_pyfunction!(h0, m)?)?;
    m.add_function(wrap_pyfunction!(intersect, m)?)?;
    m.add_function(wrap_pyfunction!(adjunction_genus, m)?)?;
    m.add_function(wrap_pyfunction!(pushforward, m)?)?;
    Ok(())
}
