//! Python bindings. Rationals come back as `fractions.Fraction`; structured
//! results come back as plain dicts and lists, with rationals inside them
//! written as `"p/q"` strings exactly as the command-line tool prints them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyFloat, PyString};
use raag_core::{Character, Error, FlagComplex, Q};
use serde_json::Value;

create_exception!(
    raag,
    RaagError,
    PyValueError,
    "Raised for every library error; `kind` holds a stable tag."
);

fn raise(py: Python<'_>, e: Error) -> PyErr {
    let err = RaagError::new_err(e.to_string());
    let value = err.value(py);
    let _ = value.setattr("kind", e.kind());
    if let Error::NotChordal { cycle } = &e {
        let _ = value.setattr("cycle", cycle.clone());
    }
    err
}

trait OrRaise<T> {
    fn or_raise(self, py: Python<'_>) -> PyResult<T>;
}

impl<T> OrRaise<T> for raag_core::Result<T> {
    fn or_raise(self, py: Python<'_>) -> PyResult<T> {
        self.map_err(|e| raise(py, e))
    }
}

fn fraction<'py>(py: Python<'py>, x: &Q) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((x.numer().clone(), x.denom().clone()))
}

fn from_json<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).expect("serialisable");
    py.import("json")?.call_method1("loads", (text,))
}

fn to_json_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serialisable")
}

fn rational(value: &Bound<'_, PyAny>, key: &str) -> PyResult<Q> {
    let bad = |what: &str| PyValueError::new_err(format!("value for `{key}`: {what}"));
    if value.is_instance_of::<PyFloat>() {
        return Err(bad(
            "inexact number; use an int, a Fraction or a \"p/q\" string",
        ));
    }
    if let Ok(n) = value.extract::<BigInt>() {
        return Ok(Q::from_integer(n));
    }
    if value.is_instance_of::<PyString>() {
        let s: String = value.extract()?;
        return raag_core::parse_q(&s).ok_or_else(|| bad("not a rational"));
    }
    if let (Ok(n), Ok(d)) = (value.getattr("numerator"), value.getattr("denominator")) {
        let n: BigInt = n.extract()?;
        let d: BigInt = d.extract()?;
        if d == BigInt::from(0) {
            return Err(bad("zero denominator"));
        }
        return Ok(Q::new(n, d));
    }
    Err(bad("expected int, Fraction or string"))
}

fn character(values: &Bound<'_, PyDict>) -> PyResult<Character> {
    let mut out = BTreeMap::new();
    for (k, v) in values.iter() {
        let key: String = k.extract()?;
        let q = rational(&v, &key)?;
        out.insert(key, q);
    }
    Ok(Character::new(out))
}

/// A finite simplicial graph, standing for its flag completion.
#[pyclass(name = "FlagComplex", module = "raag", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyFlagComplex {
    inner: FlagComplex,
}

#[pymethods]
impl PyFlagComplex {
    #[new]
    #[pyo3(signature = (vertices, edges = Vec::new()))]
    fn new(py: Python<'_>, vertices: Vec<String>, edges: Vec<(String, String)>) -> PyResult<Self> {
        Ok(PyFlagComplex {
            inner: FlagComplex::new(&vertices, &edges).or_raise(py)?,
        })
    }

    /// Parses an edge-list or JSON document.
    #[staticmethod]
    fn parse(py: Python<'_>, text: &str) -> PyResult<Self> {
        Ok(PyFlagComplex {
            inner: raag_core::parse_complex(text).or_raise(py)?,
        })
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    #[getter]
    fn edges(&self) -> Vec<(String, String)> {
        self.inner
            .edges()
            .into_iter()
            .map(|(u, v)| {
                (
                    self.inner.name(u).to_string(),
                    self.inner.name(v).to_string(),
                )
            })
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "FlagComplex(vertices={}, edges={})",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }

    fn with_clique_cap(&self, cap: usize) -> Self {
        PyFlagComplex {
            inner: self.inner.clone().with_clique_cap(cap),
        }
    }

    fn induced(&self, py: Python<'_>, vertices: Vec<String>) -> PyResult<Self> {
        Ok(PyFlagComplex {
            inner: self.inner.induced(&vertices).or_raise(py)?,
        })
    }

    fn link(&self, py: Python<'_>, vertex: &str) -> PyResult<Self> {
        Ok(PyFlagComplex {
            inner: self.inner.link(vertex).or_raise(py)?,
        })
    }

    fn components(&self) -> Vec<Self> {
        self.inner
            .components()
            .into_iter()
            .map(|inner| PyFlagComplex { inner })
            .collect()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn cut_rank(&self, py: Python<'_>, vertex: &str) -> PyResult<usize> {
        self.inner.cut_rank(vertex).or_raise(py)
    }

    fn maximal_cliques(&self) -> Vec<Vec<String>> {
        self.inner.maximal_cliques()
    }

    fn f_vector(&self, py: Python<'_>) -> PyResult<Vec<usize>> {
        self.inner.f_vector().or_raise(py)
    }

    /// `{"verdict": bool, "peo": [...]}` or `{"verdict": False, "bad_cycle": [...]}`.
    fn is_chordal<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        from_json(py, &to_json_value(&raag_core::is_chordal(&self.inner)))
    }

    /// Reduced Betti numbers keyed by dimension, starting at -1.
    fn reduced_betti(&self, py: Python<'_>) -> PyResult<BTreeMap<isize, usize>> {
        let b = raag_core::reduced_betti(&self.inner).or_raise(py)?;
        Ok((-1..=b.top_dim).map(|d| (d, b.get(d))).collect())
    }

    /// χ(A_L) = 1 - χ(L).
    fn euler_raag(&self, py: Python<'_>) -> PyResult<i64> {
        raag_core::euler_raag(&self.inner).or_raise(py)
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        from_json(py, &self.inner.to_json())
    }
}

#[pyfunction]
fn random_chordal(py: Python<'_>, n: usize, seed: u64) -> PyResult<PyFlagComplex> {
    Ok(PyFlagComplex {
        inner: raag_core::verify::random_chordal(n, seed).or_raise(py)?,
    })
}

#[pyfunction]
fn find_separating_clique(
    py: Python<'_>,
    l: &PyFlagComplex,
    k0: Vec<String>,
    k1: Vec<String>,
) -> PyResult<Vec<String>> {
    raag_core::find_separating_clique(&l.inner, &k0, &k1).or_raise(py)
}

#[pyfunction]
fn clique_tree_splitting<'py>(py: Python<'py>, l: &PyFlagComplex) -> PyResult<Bound<'py, PyAny>> {
    let g = raag_core::clique_tree_splitting(&l.inner).or_raise(py)?;
    from_json(py, &g.to_json())
}

#[pyfunction]
#[pyo3(signature = (l, max_i = None))]
fn l2_betti_group<'py>(
    py: Python<'py>,
    l: &PyFlagComplex,
    max_i: Option<usize>,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let max_i = match max_i {
        Some(m) => m,
        None => raag_core::l2::default_max_degree(&l.inner).or_raise(py)?,
    };
    raag_core::l2_betti_group(&l.inner, max_i)
        .or_raise(py)?
        .iter()
        .map(|x| fraction(py, x))
        .collect()
}

#[pyfunction]
#[pyo3(signature = (l, phi, max_i = None))]
fn l2_betti_kernel<'py>(
    py: Python<'py>,
    l: &PyFlagComplex,
    phi: &Bound<'py, PyDict>,
    max_i: Option<usize>,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let max_i = match max_i {
        Some(m) => m,
        None => raag_core::l2::default_max_degree(&l.inner).or_raise(py)?,
    };
    raag_core::l2_betti_kernel(&l.inner, &character(phi)?, max_i)
        .or_raise(py)?
        .iter()
        .map(|x| fraction(py, x))
        .collect()
}

#[pyfunction]
fn l2_euler_kernel<'py>(
    py: Python<'py>,
    l: &PyFlagComplex,
    phi: &Bound<'py, PyDict>,
) -> PyResult<Bound<'py, PyAny>> {
    let x = raag_core::l2_euler_kernel(&l.inner, &character(phi)?).or_raise(py)?;
    fraction(py, &x)
}

#[pyfunction]
fn is_fibered<'py>(
    py: Python<'py>,
    l: &PyFlagComplex,
    phi: &Bound<'py, PyDict>,
) -> PyResult<Bound<'py, PyAny>> {
    let r = raag_core::is_fibered(&l.inner, &character(phi)?).or_raise(py)?;
    from_json(py, &to_json_value(&r))
}

#[pyfunction]
fn l2_polytope<'py>(py: Python<'py>, l: &PyFlagComplex) -> PyResult<Bound<'py, PyAny>> {
    from_json(
        py,
        &raag_core::l2_polytope(&l.inner).or_raise(py)?.to_json(),
    )
}

#[pyfunction]
fn thurston_norm<'py>(
    py: Python<'py>,
    l: &PyFlagComplex,
    phi: &Bound<'py, PyDict>,
) -> PyResult<Bound<'py, PyAny>> {
    let x = raag_core::thurston_norm(&l.inner, &character(phi)?).or_raise(py)?;
    fraction(py, &x)
}

#[pyfunction]
fn thurston_norm_real(
    py: Python<'_>,
    l: &PyFlagComplex,
    phi: BTreeMap<String, f64>,
) -> PyResult<f64> {
    raag_core::thurston_norm_real(&l.inner, &phi).or_raise(py)
}

#[pyfunction]
fn norm_ball<'py>(py: Python<'py>, l: &PyFlagComplex) -> PyResult<Bound<'py, PyAny>> {
    from_json(py, &raag_core::norm_ball(&l.inner).or_raise(py)?.to_json())
}

/// `{"graph_of_groups": ..., "report": ...}`.
#[pyfunction]
fn dual_splitting<'py>(
    py: Python<'py>,
    l: &PyFlagComplex,
    phi: &Bound<'py, PyDict>,
) -> PyResult<Bound<'py, PyAny>> {
    let (g, report) = raag_core::dual_splitting(&l.inner, &character(phi)?).or_raise(py)?;
    from_json(
        py,
        &serde_json::json!({ "graph_of_groups": g.to_json(), "report": to_json_value(&report) }),
    )
}

/// Complexity of the dual splitting of φ.
#[pyfunction]
fn splitting_complexity<'py>(
    py: Python<'py>,
    l: &PyFlagComplex,
    phi: &Bound<'py, PyDict>,
) -> PyResult<Bound<'py, PyAny>> {
    let (g, _) = raag_core::dual_splitting(&l.inner, &character(phi)?).or_raise(py)?;
    fraction(py, &raag_core::splitting_complexity(&g).or_raise(py)?)
}

/// Truncation at level `k` of the cyclic cover of the dual splitting of φ.
#[pyfunction]
fn cyclic_cover_truncation<'py>(
    py: Python<'py>,
    l: &PyFlagComplex,
    phi: &Bound<'py, PyDict>,
    k: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let (g, _) = raag_core::dual_splitting(&l.inner, &character(phi)?).or_raise(py)?;
    let t = raag_core::cyclic_cover_truncation(&g, k).or_raise(py)?;
    from_json(py, &to_json_value(&t))
}

#[pyfunction]
fn cross_check<'py>(
    py: Python<'py>,
    l: &PyFlagComplex,
    phi: &Bound<'py, PyDict>,
) -> PyResult<Bound<'py, PyAny>> {
    let r = raag_core::cross_check(&l.inner, &character(phi)?).or_raise(py)?;
    from_json(py, &r.to_json())
}

#[pyfunction]
#[pyo3(signature = (samples = 100, max_n = 12, seed = 42, inject_non_chordal = false))]
fn run_suite<'py>(
    py: Python<'py>,
    samples: usize,
    max_n: usize,
    seed: u64,
    inject_non_chordal: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let config = raag_core::SuiteConfig {
        samples,
        max_n,
        seed,
        inject_non_chordal,
    };
    let report = py.detach(|| raag_core::run_suite(&config));
    let mut doc = to_json_value(&report);
    doc["ok"] = Value::Bool(report.ok());
    from_json(py, &doc)
}

#[pymodule]
fn raag(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("RaagError", m.py().get_type::<RaagError>())?;
    m.add_class::<PyFlagComplex>()?;
    m.add_function(wrap_pyfunction!(random_chordal, m)?)?;
    m.add_function(wrap_pyfunction!(find_separating_clique, m)?)?;
    m.add_function(wrap_pyfunction!(clique_tree_splitting, m)?)?;
    m.add_function(wrap_pyfunction!(l2_betti_group, m)?)?;
    m.add_function(wrap_pyfunction!(l2_betti_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(l2_euler_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(is_fibered, m)?)?;
    m.add_function(wrap_pyfunction!(l2_polytope, m)?)?;
    m.add_function(wrap_pyfunction!(thurston_norm, m)?)?;
    m.add_function(wrap_pyfunction!(thurston_norm_real, m)?)?;
    m.add_function(wrap_pyfunction!(norm_ball, m)?)?;
    m.add_function(wrap_pyfunction!(dual_splitting, m)?)?;
    m.add_function(wrap_pyfunction!(splitting_complexity, m)?)?;
    m.add_function(wrap_pyfunction!(cyclic_cover_truncation, m)?)?;
    m.add_function(wrap_pyfunction!(cross_check, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
