//! Python bindings. Built as the `rcpoly` extension module.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyType;
use serde::Serialize;

use rcpoly::extremal::{self, Direction, SearchOptions};
use rcpoly::{catalog, rcp, Error};

fn value_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Serializable results cross over as plain dicts and lists.
fn to_python<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "rcpoly", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGraph {
    inner: rcpoly::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges=Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = rcpoly::Graph::from_edges(n, &edges).map_err(value_err)?;
        Ok(PyGraph { inner })
    }

    #[classmethod]
    fn from_graph6(_cls: &Bound<'_, PyType>, text: &str) -> PyResult<Self> {
        parse_graph6(text)
    }

    #[classmethod]
    fn complete(_cls: &Bound<'_, PyType>, n: usize) -> PyResult<Self> {
        Ok(PyGraph { inner: rcpoly::Graph::complete(n).map_err(value_err)? })
    }

    #[classmethod]
    fn path(_cls: &Bound<'_, PyType>, n: usize) -> PyResult<Self> {
        Ok(PyGraph { inner: rcpoly::Graph::path(n).map_err(value_err)? })
    }

    #[classmethod]
    fn cycle(_cls: &Bound<'_, PyType>, n: usize) -> PyResult<Self> {
        Ok(PyGraph { inner: rcpoly::Graph::cycle(n).map_err(value_err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn graph6(&self) -> PyResult<String> {
        rcpoly::to_graph6(&self.inner).map_err(value_err)
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn is_bipartite(&self) -> bool {
        self.inner.is_bipartite()
    }

    fn chromatic_number(&self) -> usize {
        extremal::chromatic_number(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph({}, {:?})", self.inner.n(), self.inner.edges())
    }
}

/// Forbidden colour sets, one per vertex. Colours are positive integers.
#[pyclass(name = "Restraint", module = "rcpoly", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyRestraint {
    inner: rcpoly::Restraint,
}

#[pymethods]
impl PyRestraint {
    /// Accepts a list of colour collections or a string like `"1,2;3;"`.
    #[new]
    fn new(spec: &Bound<'_, PyAny>) -> PyResult<Self> {
        let inner = if let Ok(text) = spec.extract::<String>() {
            text.parse().map_err(value_err)?
        } else {
            let sets: Vec<Vec<u32>> = spec.extract()?;
            rcpoly::Restraint::new(sets.into_iter().map(|s| s.into_iter().collect()).collect())
                .map_err(value_err)?
        };
        Ok(PyRestraint { inner })
    }

    /// One forbidden colour per vertex.
    #[classmethod]
    fn simple(_cls: &Bound<'_, PyType>, colours: Vec<u32>) -> PyResult<Self> {
        Ok(PyRestraint { inner: rcpoly::Restraint::simple(&colours).map_err(value_err)? })
    }

    #[classmethod]
    fn constant(_cls: &Bound<'_, PyType>, n: usize, m: u32) -> PyResult<Self> {
        if m == 0 {
            return Err(PyValueError::new_err("colours start at 1"));
        }
        Ok(PyRestraint { inner: rcpoly::Restraint::constant(n, m) })
    }

    fn sets(&self) -> Vec<Vec<u32>> {
        self.inner.sets().iter().map(|s| s.iter().copied().collect()).collect()
    }

    #[getter]
    fn max_colour(&self) -> u32 {
        self.inner.max_colour()
    }

    /// Restricted growth string of a simple restraint, `None` otherwise.
    fn canonical(&self) -> Option<String> {
        self.inner.canonical_rgs().map(|r| r.to_string())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Restraint({:?})", self.inner.to_string())
    }
}

/// Integer polynomial with a threshold from which it counts colourings.
#[pyclass(name = "RestrainedPoly", module = "rcpoly", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyRestrainedPoly {
    inner: rcp::RestrainedPoly,
}

#[pymethods]
impl PyRestrainedPoly {
    /// Coefficients, constant term first.
    #[getter]
    fn coeffs(&self) -> Vec<BigInt> {
        self.inner.poly.coeffs().to_vec()
    }

    #[getter]
    fn threshold(&self) -> u32 {
        self.inner.threshold
    }

    #[getter]
    fn degree(&self) -> Option<usize> {
        self.inner.poly.degree()
    }

    fn evaluate(&self, x: u64) -> BigInt {
        self.inner.evaluate(x)
    }

    fn __call__(&self, x: u64) -> BigInt {
        self.inner.evaluate(x)
    }

    /// -1, 0 or 1 by the sign of `self - other` for all large `x`.
    fn eventually_compare(&self, other: &PyRestrainedPoly) -> i32 {
        self.inner.poly.eventually_compare(&other.inner.poly) as i32
    }

    fn __str__(&self) -> String {
        self.inner.poly.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RestrainedPoly({:?}, threshold={})", self.inner.poly.to_string(), self.inner.threshold)
    }
}

#[pyfunction]
fn parse_graph6(text: &str) -> PyResult<PyGraph> {
    Ok(PyGraph { inner: rcpoly::parse_graph6(text).map_err(value_err)? })
}

/// Restrained chromatic polynomial by deletion/contraction.
#[pyfunction]
fn rcp_delcon(g: &PyGraph, r: &PyRestraint) -> PyResult<PyRestrainedPoly> {
    Ok(PyRestrainedPoly { inner: rcpoly::rcp_delcon(&g.inner, &r.inner).map_err(value_err)? })
}

/// Same polynomial, interpolated from exact counts.
#[pyfunction]
fn rcp_interpolate(g: &PyGraph, r: &PyRestraint) -> PyResult<PyRestrainedPoly> {
    Ok(PyRestrainedPoly { inner: rcpoly::rcp_interpolate(&g.inner, &r.inner).map_err(value_err)? })
}

/// Number of proper `x`-colourings of `g` avoiding `r`.
#[pyfunction]
fn brute_count(g: &PyGraph, r: &PyRestraint, x: u64) -> PyResult<BigInt> {
    rcpoly::brute_count(&g.inner, &r.inner, x).map_err(value_err)
}

#[pyfunction]
fn chromatic_polynomial(g: &PyGraph) -> Vec<BigInt> {
    rcp::chromatic_polynomial(&g.inner).coeffs().to_vec()
}

/// Eventual maximizers (or minimizers) among simple restraints, as a dict.
#[pyfunction]
#[pyo3(signature = (g, direction="max", max_n=extremal::DEFAULT_MAX_N))]
fn extremal_restraints<'py>(py: Python<'py>, g: &PyGraph, direction: &str, max_n: usize) -> PyResult<Bound<'py, PyAny>> {
    let direction: Direction = direction.parse().map_err(value_err)?;
    let report = py
        .detach(|| extremal::extremal_restraints_limited(&g.inner, direction, max_n))
        .map_err(value_err)?;
    to_python(py, &report)
}

/// Runs one of the exhaustive checks and returns its verdict as a dict.
///
/// `claim` is `theorem1` or `theorem2` (order `n`), `lemma` (trees of order
/// `n`), or `min_constant`, `conjecture`, `survey` over the connected catalog
/// of order at most `n` (default 6).
#[pyfunction]
#[pyo3(signature = (claim, n=None, fail_fast=false))]
fn verify<'py>(py: Python<'py>, claim: &str, n: Option<usize>, fail_fast: bool) -> PyResult<Bound<'py, PyAny>> {
    let opts = SearchOptions { fail_fast };
    let need_n = || n.ok_or_else(|| PyValueError::new_err(format!("{claim} needs n")));
    let catalog_upto = |hi: usize| catalog::connected_orders(1, hi).map_err(value_err);
    match claim {
        "theorem1" => {
            let k = need_n()?;
            to_python(py, &py.detach(|| extremal::verify_theorem1(k, &opts)).map_err(value_err)?)
        }
        "theorem2" => {
            let k = need_n()?;
            to_python(py, &py.detach(|| extremal::verify_theorem2(k, &opts)).map_err(value_err)?)
        }
        "lemma" => {
            let k = need_n()?;
            to_python(py, &py.detach(|| extremal::verify_lemma_trees(k, &opts)).map_err(value_err)?)
        }
        "min_constant" => {
            let cat = catalog_upto(n.unwrap_or(6))?;
            to_python(py, &py.detach(|| extremal::verify_min_is_constant(&cat, &opts)).map_err(value_err)?)
        }
        "conjecture" => {
            let cat: Vec<_> = catalog_upto(n.unwrap_or(6))?.into_iter().filter(|e| e.graph.is_bipartite()).collect();
            to_python(py, &py.detach(|| extremal::check_conjecture_bipartite(&cat, &opts)).map_err(value_err)?)
        }
        "survey" => {
            let cat = catalog_upto(n.unwrap_or(6))?;
            let found = py.detach(|| extremal::survey_non_minimal_maximizers(&cat)).map_err(value_err)?;
            let ids: Vec<&str> = found.iter().map(|f| f.graph6.as_str()).collect();
            to_python(py, &ids)
        }
        other => Err(PyValueError::new_err(format!("unknown claim {other:?}"))),
    }
}

/// graph6 records of the connected graphs on 1 to 6 vertices.
#[pyfunction]
fn connected_catalog() -> PyResult<Vec<String>> {
    Ok(catalog::connected_le6().map_err(value_err)?.into_iter().map(|e| e.id).collect())
}

/// Canonical simple restraints on `n` vertices, as restricted growth strings.
#[pyfunction]
fn canonical_simple_restraints(n: usize) -> Vec<String> {
    rcpoly::restraint::enumerate_canonical_simple(n).map(|r| r.to_string()).collect()
}

#[pymodule(name = "rcpoly")]
fn rcpoly_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyRestraint>()?;
    m.add_class::<PyRestrainedPoly>()?;
    m.add_function(wrap_pyfunction!(parse_graph6, m)?)?;
    m.add_function(wrap_pyfunction!(rcp_delcon, m)?)?;
    m.add_function(wrap_pyfunction!(rcp_interpolate, m)?)?;
    m.add_function(wrap_pyfunction!(brute_count, m)?)?;
    m.add_function(wrap_pyfunction!(chromatic_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(extremal_restraints, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(connected_catalog, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_simple_restraints, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use pyo3::types::PyDict;

    fn with_module<F: FnOnce(Python<'_>, &Bound<'_, PyModule>)>(f: F) {
        Python::initialize();
        Python::attach(|py| {
            let m = PyModule::new(py, "rcpoly").unwrap();
            rcpoly_module(&m).unwrap();
            f(py, &m);
        });
    }

    fn eval<'py>(py: Python<'py>, m: &Bound<'py, PyModule>, expr: &str) -> Bound<'py, PyAny> {
        let globals = PyDict::new(py);
        globals.set_item("rcpoly", m).unwrap();
        let code = std::ffi::CString::new(expr).unwrap();
        py.eval(&code, Some(&globals), None).unwrap_or_else(|e| panic!("{expr}: {e}"))
    }

    #[test]
    fn triangle_polynomial() {
        with_module(|py, m| {
            let coeffs: Vec<i64> = eval(py, m, "rcpoly.rcp_delcon(rcpoly.Graph.from_graph6('Bw'), rcpoly.Restraint('1;2;1')).coeffs").extract().unwrap();
            assert_eq!(coeffs, vec![-10, 13, -6, 1]);
            let agree: bool = eval(py, m, "rcpoly.rcp_interpolate(rcpoly.Graph.cycle(3), rcpoly.Restraint([[1], [2], [1]])) == rcpoly.rcp_delcon(rcpoly.Graph.cycle(3), rcpoly.Restraint.simple([1, 2, 1]))").extract().unwrap();
            assert!(agree);
            let count: i64 = eval(py, m, "rcpoly.brute_count(rcpoly.Graph(3, [(0, 1), (1, 2), (0, 2)]), rcpoly.Restraint('1;2;3'), 3)").extract().unwrap();
            assert_eq!(count, 2);
        });
    }

    #[test]
    fn large_values_become_python_ints() {
        with_module(|py, m| {
            let big: String = eval(py, m, "str(rcpoly.rcp_delcon(rcpoly.Graph(30), rcpoly.Restraint.constant(30, 1)).evaluate(10**6))").extract().unwrap();
            assert_eq!(big, BigInt::from(999_999u64).pow(30).to_string());
        });
    }

    #[test]
    fn errors_raise_value_error() {
        with_module(|py, m| {
            let globals = PyDict::new(py);
            globals.set_item("rcpoly", m).unwrap();
            let err = py.eval(c"rcpoly.parse_graph6('B')", Some(&globals), None).unwrap_err();
            assert!(err.is_instance_of::<PyValueError>(py));
            let err = py.eval(c"rcpoly.Restraint('0;1')", Some(&globals), None).unwrap_err();
            assert!(err.is_instance_of::<PyValueError>(py));
        });
    }

    #[test]
    fn reports_are_dicts() {
        with_module(|py, m| {
            let alt: bool = eval(py, m, "rcpoly.extremal_restraints(rcpoly.Graph.path(4))['winners'][0]['is_alternating']").extract().unwrap();
            assert!(alt);
            let holds: bool = eval(py, m, "rcpoly.verify('theorem2', n=4)['holds']").extract().unwrap();
            assert!(holds);
            let found: usize = eval(py, m, "len(rcpoly.verify('survey'))").extract().unwrap();
            assert_eq!(found, 2);
        });
    }
}
