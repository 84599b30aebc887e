use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use flipcheck::bwb::{gr_ext, sum_cohomology, GradedDims};
use flipcheck::chessboard::{sod2, sod2_final};
use flipcheck::expr::{parse_gr, parse_object};
use flipcheck::flagx::{e_ext, x_ext, ExtResult};
use flipcheck::scripts::{parse_script, run_script, Parity};
use flipcheck::verify::{verify_all, verify_lemma, Lemma, Options};

fn err(e: flipcheck::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn dims(d: &GradedDims) -> BTreeMap<i64, u128> {
    d.iter().collect()
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

fn parity(p: &str) -> PyResult<Parity> {
    match p {
        "odd" => Ok(Parity::Odd),
        "even" => Ok(Parity::Even),
        _ => Err(PyValueError::new_err(format!("parity must be 'odd' or 'even', got {p:?}"))),
    }
}

/// An object on the flag variety E, parsed from the expression grammar.
#[pyclass(name = "EObject", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyEObject(flipcheck::flagx::EObject);

#[pymethods]
impl PyEObject {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse_object(text).map(Self).map_err(err)
    }

    fn twist(&self, big: i64, small: i64) -> Self {
        Self(self.0.twist(big, small))
    }

    fn shift(&self, by: i64) -> Self {
        Self(self.0.shift(by))
    }

    fn to_expr(&self) -> String {
        self.0.to_expr()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("EObject({:?})", self.0.to_expr())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

/// Verification report: claims, summary and exit code.
#[pyclass(name = "Report", frozen)]
struct PyReport(flipcheck::report::Report);

#[pymethods]
impl PyReport {
    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    #[getter]
    fn exit_code(&self) -> i32 {
        self.0.exit_code()
    }

    #[getter]
    fn summary(&self) -> BTreeMap<&'static str, usize> {
        let s = self.0.summary;
        BTreeMap::from([("pass", s.pass), ("fail", s.fail), ("indeterminate", s.indeterminate), ("skipped", s.skipped)])
    }

    #[getter]
    fn claims<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let text = serde_json::to_string(&self.0.claims).map_err(|e| PyValueError::new_err(e.to_string()))?;
        json_to_py(py, &text)
    }

    fn __len__(&self) -> usize {
        self.0.claims.len()
    }
}

/// Cohomology of a sum of bundles on Gr(2,N) as {degree: dimension}.
#[pyfunction]
#[pyo3(signature = (expr, big_n))]
fn cohomology(expr: &str, big_n: usize) -> PyResult<BTreeMap<i64, u128>> {
    let s = parse_gr(expr).map_err(err)?;
    sum_cohomology(&s, big_n).map(|d| dims(&d)).map_err(err)
}

/// Ext•(A, B) on "gr", "e" or "x". On X an indeterminate result raises.
#[pyfunction]
#[pyo3(signature = (a, b, big_n, space = "gr"))]
fn ext(a: &str, b: &str, big_n: usize, space: &str) -> PyResult<BTreeMap<i64, u128>> {
    let d = match space {
        "gr" => gr_ext(&parse_gr(a).map_err(err)?, &parse_gr(b).map_err(err)?, big_n).map_err(err)?,
        "e" => e_ext(&parse_object(a).map_err(err)?, &parse_object(b).map_err(err)?, big_n).map_err(err)?,
        "x" => match x_ext(&parse_object(a).map_err(err)?, &parse_object(b).map_err(err)?, big_n).map_err(err)? {
            ExtResult::Zero => GradedDims::zero(),
            ExtResult::Exact { dims } => dims,
            r @ ExtResult::Bounded { .. } => return Err(PyValueError::new_err(format!("indeterminate: {r}"))),
        },
        _ => return Err(PyValueError::new_err(format!("space must be 'gr', 'e' or 'x', got {space:?}"))),
    };
    Ok(dims(&d))
}

/// Run one suite (or "all") for a given n and parity.
#[pyfunction]
#[pyo3(signature = (n, parity, lemma = "all", strict = false))]
fn verify(py: Python<'_>, n: usize, parity: &str, lemma: &str, strict: bool) -> PyResult<PyReport> {
    let p = self::parity(parity)?;
    let l: Lemma = lemma.parse().map_err(err)?;
    py.detach(|| verify_lemma(l, n, p, &Options { strict })).map(PyReport).map_err(err)
}

/// Every suite for both parities over n_min..=n_max.
#[pyfunction]
#[pyo3(name = "verify_all", signature = (n_min, n_max, strict = false))]
fn py_verify_all(py: Python<'_>, n_min: usize, n_max: usize, strict: bool) -> PyResult<PyReport> {
    py.detach(|| verify_all(n_min, n_max, &Options { strict })).map(PyReport).map_err(err)
}

/// Replay a mutation script. Returns the final objects, or raises with the failing move.
#[pyfunction]
#[pyo3(signature = (text, strict = false))]
fn replay(text: &str, strict: bool) -> PyResult<Vec<PyEObject>> {
    let s = parse_script(text).map_err(err)?;
    let out = run_script(&s, strict).map_err(err)?;
    if let Some((i, mv, e)) = out.failure {
        return Err(PyValueError::new_err(format!("move {i} '{mv}': {e}")));
    }
    Ok(out.collection.objects().into_iter().map(PyEObject).collect())
}

/// ASCII chessboards for N = 2n+1.
#[pyfunction]
fn chessboard(n: i64) -> PyResult<String> {
    if n < 2 {
        return Err(PyValueError::new_err("chessboard needs n >= 2"));
    }
    Ok([sod2(n), sod2_final(n)].iter().map(|b| b.render_ascii()).collect::<Vec<_>>().join("\n"))
}

#[pymodule]
fn flipcheck_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyEObject>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(ext, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(py_verify_all, m)?)?;
    m.add_function(wrap_pyfunction!(replay, m)?)?;
    m.add_function(wrap_pyfunction!(chessboard, m)?)?;
    Ok(())
}
