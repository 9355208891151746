//! Python bindings for `cayley2dt`.

use std::path::PathBuf;
use std::time::Duration;

use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use cayley2dt::report::{self, CheckSelector, Format, WhichGraph};
use cayley2dt::{Error, GroupElement, GroupParams, SuiteConfig};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::InvalidPrime(_) | Error::UnsupportedPrime { .. } | Error::Config(_) => {
            PyValueError::new_err(e.to_string())
        }
        Error::Io { .. } => PyOSError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn params(p: u64) -> PyResult<GroupParams> {
    GroupParams::new(p).map_err(to_py)
}

type Triple = (i64, i64, i64);

/// The extraspecial group of order p^3, elements as `(i, j, k)` for `a^i b^j c^k`.
#[pyclass(name = "Group", frozen)]
struct PyGroup {
    inner: GroupParams,
}

impl PyGroup {
    fn el(&self, x: Triple) -> GroupElement {
        self.inner.element(x.0, x.1, x.2)
    }
}

fn triple(g: GroupElement) -> (u32, u32, u32) {
    (g.i, g.j, g.k)
}

#[pymethods]
impl PyGroup {
    #[new]
    fn new(p: u64) -> PyResult<Self> {
        Ok(Self { inner: params(p)? })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    fn multiply(&self, x: Triple, y: Triple) -> (u32, u32, u32) {
        triple(self.inner.multiply(self.el(x), self.el(y)))
    }

    fn inverse(&self, x: Triple) -> (u32, u32, u32) {
        triple(self.inner.inverse(self.el(x)))
    }

    fn commutator(&self, x: Triple, y: Triple) -> (u32, u32, u32) {
        triple(self.inner.commutator(self.el(x), self.el(y)))
    }

    fn index(&self, x: Triple) -> usize {
        self.inner.index(self.el(x))
    }

    fn connection_set(&self) -> Vec<(u32, u32, u32)> {
        self.inner
            .connection_set()
            .into_iter()
            .map(triple)
            .collect()
    }

    /// Order of Aut(G, S).
    fn aut_gs_order(&self) -> PyResult<usize> {
        Ok(self.inner.aut_g_s().map_err(to_py)?.len())
    }

    fn __repr__(&self) -> String {
        format!("Group(p={})", self.inner.p())
    }
}

/// Summary of Γ = Cay(G, S) as a JSON string.
#[pyfunction]
fn summary(p: u64) -> PyResult<String> {
    let ctx = cayley2dt::build_cayley(params(p)?).map_err(to_py)?;
    serde_json::to_string(&ctx.summary()).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// Render `gamma`, `sigma` or `quotient` as `json` or `dot`.
#[pyfunction]
#[pyo3(signature = (p, graph = "gamma", format = "json"))]
fn render(p: u64, graph: &str, format: &str) -> PyResult<String> {
    let which: WhichGraph = graph.parse().map_err(to_py)?;
    let format: Format = format.parse().map_err(to_py)?;
    report::render_graph(params(p)?, which, format).map_err(to_py)
}

/// Order of the full automorphism group of the chosen graph.
#[pyfunction]
#[pyo3(signature = (p, graph = "gamma"))]
fn automorphism_order(py: Python<'_>, p: u64, graph: &str) -> PyResult<u128> {
    let which: WhichGraph = graph.parse().map_err(to_py)?;
    let g = report::build_graph(params(p)?, which).map_err(to_py)?;
    py.detach(|| cayley2dt::aut_search::automorphism_search(&g).map(|s| s.order))
        .map_err(to_py)
}

/// Run the verification suite and return the report as JSON.
#[pyfunction]
#[pyo3(signature = (p, checks = None, skip_aut_search = false, timeout = 120.0))]
fn verify(
    py: Python<'_>,
    p: u64,
    checks: Option<&str>,
    skip_aut_search: bool,
    timeout: f64,
) -> PyResult<String> {
    let mut config = SuiteConfig::new(p).map_err(to_py)?;
    config.checks = checks.map(CheckSelector::parse).unwrap_or_default();
    config.skip_aut_search = skip_aut_search;
    config.timeout =
        Duration::try_from_secs_f64(timeout).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let report = py.detach(|| cayley2dt::run_suite(&config)).map_err(to_py)?;
    report.to_json().map_err(to_py)
}

/// Write a graph to disk and return the path.
#[pyfunction]
#[pyo3(signature = (p, graph, format = "json", path = None))]
fn export(p: u64, graph: &str, format: &str, path: Option<PathBuf>) -> PyResult<PathBuf> {
    let mut config = SuiteConfig::new(p).map_err(to_py)?;
    config.format = format.parse().map_err(to_py)?;
    config.output = path;
    report::export(&config, graph.parse().map_err(to_py)?).map_err(to_py)
}

#[pymodule]
fn cayley2dt_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_function(wrap_pyfunction!(summary, m)?)?;
    m.add_function(wrap_pyfunction!(render, m)?)?;
    m.add_function(wrap_pyfunction!(automorphism_order, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(export, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
