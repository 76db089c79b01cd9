//! Python bindings: monoids, Betti vectors, Poincaré tables and the
//! verification reports.
//!
//! Elements cross the boundary as JSON-shaped Python values (`6`, `[1, 2]`,
//! `{"n": 1, "hat1": [0], "hat2": [0]}`, or a raw glued pair `[[3], [0]]`);
//! strings are parsed as element literals directly.

use std::sync::Arc;

use frobenius_core as fc;
use frobenius_core::{BettiConfig, BettiVector, Element, FieldChoice, Method, MonoidDescriptor};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList, PyString};
use serde::Serialize;

create_exception!(frobenius, FrobeniusError, PyException);

fn err(e: fc::Error) -> PyErr {
    FrobeniusError::new_err(e.to_string())
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn from_py(value: &Bound<'_, PyAny>) -> PyResult<String> {
    if let Ok(s) = value.cast::<PyString>() {
        return Ok(s.to_str()?.to_owned());
    }
    value.py().import("json")?.call_method1("dumps", (value,))?.extract()
}

fn field_of(field: Option<u64>) -> PyResult<FieldChoice> {
    match field {
        Some(p) => FieldChoice::prime(p).map_err(err),
        None => Ok(FieldChoice::Rationals),
    }
}

fn method_of(method: &str) -> PyResult<Method> {
    match method {
        "auto" => Ok(Method::Auto),
        "order_complex" => Ok(Method::OrderComplex),
        "core" => Ok(Method::Core),
        "resolution" => Ok(Method::Resolution),
        other => Err(PyValueError::new_err(format!(
            "unknown method {other:?}; expected auto, order_complex, core or resolution"
        ))),
    }
}

fn betti_dict<'py>(py: Python<'py>, b: &BettiVector) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    for (i, v) in b.nonzero() {
        d.set_item(i, v)?;
    }
    Ok(d)
}

/// An affine monoid built from a JSON descriptor.
#[pyclass(frozen, module = "frobenius")]
struct Monoid {
    inner: Arc<fc::Monoid>,
}

impl Monoid {
    fn wrap(desc: MonoidDescriptor) -> PyResult<Self> {
        Ok(Monoid {
            inner: Arc::new(fc::Monoid::new(desc).map_err(err)?),
        })
    }

    fn element(&self, value: &Bound<'_, PyAny>) -> PyResult<Element> {
        fc::io::parse_element(&self.inner, &from_py(value)?).map_err(err)
    }

    fn descriptor(&self) -> &MonoidDescriptor {
        self.inner.descriptor()
    }
}

fn vector(value: &Bound<'_, PyAny>) -> PyResult<Element> {
    if let Ok(k) = value.extract::<u64>() {
        return Ok(Element::vector([k]));
    }
    Ok(Element::vector(value.extract::<Vec<u64>>()?))
}

#[pymethods]
impl Monoid {
    /// Parses a descriptor given as JSON text.
    #[new]
    fn new(descriptor: &str) -> PyResult<Self> {
        Self::wrap(fc::io::parse_descriptor(descriptor).map_err(err)?)
    }

    #[staticmethod]
    fn free(rank: usize) -> PyResult<Self> {
        Self::wrap(MonoidDescriptor::free(rank))
    }

    /// The numerical semigroup generated by `gens`.
    #[staticmethod]
    fn numerical(gens: Vec<u64>) -> PyResult<Self> {
        Self::wrap(MonoidDescriptor::numerical(&gens))
    }

    #[staticmethod]
    fn submonoid(ambient_rank: usize, generators: Vec<Vec<u64>>) -> PyResult<Self> {
        Self::wrap(MonoidDescriptor::submonoid(ambient_rank, generators))
    }

    #[staticmethod]
    fn glued(left: &Monoid, right: &Monoid, rho1: &Bound<'_, PyAny>, rho2: &Bound<'_, PyAny>) -> PyResult<Self> {
        let desc = MonoidDescriptor::glued(
            left.descriptor().clone(),
            right.descriptor().clone(),
            left.element(rho1)?,
            right.element(rho2)?,
        );
        Self::wrap(desc)
    }

    #[staticmethod]
    fn adjoin_root(base: &Monoid, rho: &Bound<'_, PyAny>, r: u64) -> PyResult<Self> {
        let rho = vector(rho).or_else(|_| base.element(rho))?;
        Self::wrap(MonoidDescriptor::adjoin_root(base.descriptor().clone(), rho, r).map_err(err)?)
    }

    /// The descriptor as JSON text.
    fn to_json(&self) -> String {
        fc::io::to_json(self.descriptor())
    }

    fn generators(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner.generators())
    }

    fn zero(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, self.inner.zero())
    }

    /// `ρ` of a gluing, `None` otherwise.
    fn rho(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner.rho())
    }

    fn degree(&self, element: &Bound<'_, PyAny>) -> PyResult<u64> {
        Ok(self.inner.degree(&self.element(element)?))
    }

    fn add(&self, py: Python<'_>, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner.add(&self.element(a)?, &self.element(b)?))
    }

    /// `b - a`, or `None` when `a` does not divide `b`.
    fn subtract(&self, py: Python<'_>, b: &Bound<'_, PyAny>, a: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner.subtract(&self.element(b)?, &self.element(a)?))
    }

    fn divides(&self, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.inner.divides(&self.element(a)?, &self.element(b)?))
    }

    fn is_reducible(&self, element: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.inner.is_reducible(&self.element(element)?))
    }

    /// Canonical form of an element given in any accepted shape.
    fn normalize(&self, py: Python<'_>, element: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.element(element)?)
    }

    fn elements_up_to(&self, py: Python<'_>, bound: u64) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner.elements_up_to(bound))
    }

    /// The open interval `(0, λ)` as `{"elements": [...], "covers": [...]}`.
    fn interval(&self, py: Python<'_>, element: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
        let lam = self.element(element)?;
        if self.inner.is_zero(&lam) {
            return Err(PyValueError::new_err("the interval (0, 0) is not defined"));
        }
        to_py(py, &self.inner.open_interval(&lam).export())
    }

    fn __repr__(&self) -> String {
        format!(
            "Monoid({})",
            serde_json::to_string(self.descriptor()).unwrap_or_default()
        )
    }
}

/// Tor-graded Betti vector `{i: b_i}` of `element`.
#[pyfunction]
#[pyo3(signature = (monoid, element, field=None, method="auto"))]
fn betti(
    py: Python<'_>,
    monoid: &Monoid,
    element: &Bound<'_, PyAny>,
    field: Option<u64>,
    method: &str,
) -> PyResult<Py<PyDict>> {
    let lam = monoid.element(element)?;
    let cfg = BettiConfig {
        method: method_of(method)?,
        ..BettiConfig::with_field(field_of(field)?)
    };
    let m = monoid.inner.clone();
    let record = py.detach(move || fc::betti_record(&m, &lam, &cfg)).map_err(err)?;
    Ok(betti_dict(py, &record.betti)?.unbind())
}

/// The full record for one element: vector, route, simplex and face counts.
#[pyfunction]
#[pyo3(signature = (monoid, element, field=None))]
fn betti_record(
    py: Python<'_>,
    monoid: &Monoid,
    element: &Bound<'_, PyAny>,
    field: Option<u64>,
) -> PyResult<Py<PyAny>> {
    let lam = monoid.element(element)?;
    let cfg = BettiConfig::with_field(field_of(field)?);
    let m = monoid.inner.clone();
    let record = py.detach(move || fc::betti_record(&m, &lam, &cfg)).map_err(err)?;
    to_py(py, &record)
}

/// Predicted Betti vector of an element of a gluing.
#[pyfunction]
#[pyo3(signature = (monoid, element, field=None))]
fn predicted_betti(
    py: Python<'_>,
    monoid: &Monoid,
    element: &Bound<'_, PyAny>,
    field: Option<u64>,
) -> PyResult<Py<PyDict>> {
    let lam = monoid.element(element)?;
    let cfg = BettiConfig::with_field(field_of(field)?);
    let m = monoid.inner.clone();
    let b = py.detach(move || fc::predicted_betti(&m, &lam, &cfg)).map_err(err)?;
    Ok(betti_dict(py, &b)?.unbind())
}

/// Truncated Poincaré series as `[(degree, element, {i: b_i}), ...]`;
/// with `predicted`, the product formula for a gluing instead.
#[pyfunction]
#[pyo3(signature = (monoid, bound, field=None, predicted=false))]
fn poincare(py: Python<'_>, monoid: &Monoid, bound: u64, field: Option<u64>, predicted: bool) -> PyResult<Py<PyAny>> {
    let cfg = BettiConfig::with_field(field_of(field)?);
    let m = monoid.inner.clone();
    let table = py
        .detach(move || {
            if predicted {
                fc::predicted_poincare_table(&m, bound, &cfg)
            } else {
                fc::poincare_table(&m, bound, &cfg)
            }
        })
        .map_err(err)?;
    let rows = PyList::empty(py);
    for (degree, lam, b) in table.iter() {
        rows.append((degree, to_py(py, lam)?, betti_dict(py, b)?))?;
    }
    Ok(rows.into_any().unbind())
}

/// The Frobenius complex as `{"vertices": [...], "facets": [...]}`.
#[pyfunction]
#[pyo3(signature = (monoid, element, simplex_cap=1_000_000))]
fn frobenius_complex(
    py: Python<'_>,
    monoid: &Monoid,
    element: &Bound<'_, PyAny>,
    simplex_cap: usize,
) -> PyResult<Py<PyAny>> {
    let lam = monoid.element(element)?;
    let complex = fc::frobenius_complex(&monoid.inner, &lam, simplex_cap).map_err(err)?;
    to_py(py, &fc::io::complex_file(&complex))
}

/// Reduced Betti vector (Tor grading) of the complex spanned by `facets`.
#[pyfunction]
#[pyo3(signature = (facets, field=None))]
fn complex_betti(py: Python<'_>, facets: Vec<Vec<u32>>, field: Option<u64>) -> PyResult<Py<PyDict>> {
    let vertices = facets.iter().flatten().max().map_or(0, |v| v + 1);
    let labels = (0..vertices).map(|v| v.to_string()).collect();
    let k = fc::SimplicialComplex::from_facets(labels, &facets, 1 << 22).map_err(err)?;
    Ok(betti_dict(py, &k.reduced_betti(field_of(field)?))?.unbind())
}

fn report(py: Python<'_>, r: fc::Result<fc::VerificationReport>) -> PyResult<Py<PyAny>> {
    to_py(py, &r.map_err(err)?)
}

/// Direct against predicted Betti vectors of a gluing, as a report dict.
#[pyfunction]
#[pyo3(signature = (monoid, bound, field=None))]
fn verify_gluing(py: Python<'_>, monoid: &Monoid, bound: u64, field: Option<u64>) -> PyResult<Py<PyAny>> {
    let cfg = BettiConfig::with_field(field_of(field)?);
    let m = monoid.inner.clone();
    report(py, py.detach(move || fc::verify_gluing(&m, bound, &cfg)))
}

#[pyfunction]
#[pyo3(signature = (first, second, bound, field=None))]
fn verify_dirsum(
    py: Python<'_>,
    first: &Monoid,
    second: &Monoid,
    bound: u64,
    field: Option<u64>,
) -> PyResult<Py<PyAny>> {
    let cfg = BettiConfig::with_field(field_of(field)?);
    let (a, b) = (first.descriptor().clone(), second.descriptor().clone());
    report(py, py.detach(move || fc::verify_dirsum(&a, &b, bound, &cfg)))
}

#[pyfunction]
#[pyo3(signature = (monoid, bound, field=None))]
fn verify_compositions(py: Python<'_>, monoid: &Monoid, bound: u64, field: Option<u64>) -> PyResult<Py<PyAny>> {
    let cfg = BettiConfig::with_field(field_of(field)?);
    let m = monoid.inner.clone();
    report(
        py,
        Ok(py.detach(move || fc::verify_compositions(&m, bound, &cfg, fc::CompositionLimits::default()))),
    )
}

#[pymodule]
fn frobenius(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Monoid>()?;
    m.add("FrobeniusError", m.py().get_type::<FrobeniusError>())?;
    m.add_function(wrap_pyfunction!(betti, m)?)?;
    m.add_function(wrap_pyfunction!(betti_record, m)?)?;
    m.add_function(wrap_pyfunction!(predicted_betti, m)?)?;
    m.add_function(wrap_pyfunction!(poincare, m)?)?;
    m.add_function(wrap_pyfunction!(frobenius_complex, m)?)?;
    m.add_function(wrap_pyfunction!(complex_betti, m)?)?;
    m.add_function(wrap_pyfunction!(verify_gluing, m)?)?;
    m.add_function(wrap_pyfunction!(verify_dirsum, m)?)?;
    m.add_function(wrap_pyfunction!(verify_compositions, m)?)?;
    Ok(())
}
