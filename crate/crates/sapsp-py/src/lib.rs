//! Python bindings: the graph type, the generators, the single-source
//! engines, the all-pairs driver, the acyclic pipeline, and the oracle
//! verifiers. Vertices are 0-based here, matching the library; only the
//! text file format is 1-based.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use sapsp::{SsspEngine, Tolerance, Variant};

fn value_err(err: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn runtime_err(err: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(err.to_string())
}

fn engine_from(name: &str) -> PyResult<SsspEngine> {
    SsspEngine::from_name(name)
        .ok_or_else(|| value_err(format!("unknown engine '{name}' (dijkstra, dag, bellman-ford)")))
}

fn variant_from(name: &str) -> PyResult<Variant> {
    Variant::from_name(name)
        .ok_or_else(|| value_err(format!("unknown variant '{name}' (basic, improved)")))
}

/// Immutable weighted directed graph.
#[pyclass(frozen, name = "Graph", module = "sapsp_py")]
struct PyGraph {
    inner: sapsp::Graph,
}

#[pymethods]
impl PyGraph {
    /// Build a graph from (tail, head, length) triples. Self-loops are
    /// dropped and parallel arcs keep the minimum length.
    #[new]
    #[pyo3(signature = (n, arcs, allow_negative = false))]
    fn new(n: usize, arcs: Vec<(usize, usize, f64)>, allow_negative: bool) -> PyResult<Self> {
        let (inner, _) = sapsp::Graph::build(n, &arcs, allow_negative).map_err(value_err)?;
        Ok(PyGraph { inner })
    }

    /// Parse the text format (`p sp` header plus `a` lines, 1-based ids).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: sapsp::parse_graph_file(text).map_err(value_err)? })
    }

    /// Random strongly connected digraph with exactly m arcs.
    #[staticmethod]
    fn random_digraph(n: usize, m: usize, wmin: i64, wmax: i64, seed: u64) -> PyResult<Self> {
        Ok(PyGraph { inner: sapsp::gen_random_digraph(n, m, wmin, wmax, seed).map_err(value_err)? })
    }

    /// Random directed acyclic graph; negative weights allowed.
    #[staticmethod]
    fn random_dag(n: usize, m: usize, wmin: i64, wmax: i64, seed: u64) -> PyResult<Self> {
        Ok(PyGraph { inner: sapsp::gen_random_dag(n, m, wmin, wmax, seed).map_err(value_err)? })
    }

    #[staticmethod]
    fn complete(n: usize, wmin: i64, wmax: i64, seed: u64) -> PyResult<Self> {
        Ok(PyGraph { inner: sapsp::gen_complete_digraph(n, wmin, wmax, seed).map_err(value_err)? })
    }

    #[staticmethod]
    fn cycle(n: usize, wmin: i64, wmax: i64, seed: u64) -> PyResult<Self> {
        Ok(PyGraph { inner: sapsp::gen_cycle_digraph(n, wmin, wmax, seed).map_err(value_err)? })
    }

    fn to_text(&self) -> String {
        sapsp::write_graph_file(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn arcs(&self) -> Vec<(usize, usize, f64)> {
        self.inner.arcs().iter().map(|a| (a.tail, a.head, a.length)).collect()
    }

    #[getter]
    fn allows_negative(&self) -> bool {
        self.inner.allows_negative()
    }

    fn arc(&self, id: usize) -> PyResult<(usize, usize, f64)> {
        if id >= self.inner.m() {
            return Err(value_err(format!("arc id {id} out of range")));
        }
        let arc = self.inner.arc(id);
        Ok((arc.tail, arc.head, arc.length))
    }

    /// Arc ids with the given head, in insertion order.
    fn incoming_arcs(&self, v: usize) -> PyResult<Vec<usize>> {
        self.check_vertex(v)?;
        Ok(self.inner.incoming_arcs(v).to_vec())
    }

    /// Arc ids with the given tail, in insertion order.
    fn outgoing_arcs(&self, v: usize) -> PyResult<Vec<usize>> {
        self.check_vertex(v)?;
        Ok(self.inner.outgoing_arcs(v).to_vec())
    }

    fn is_acyclic(&self) -> bool {
        sapsp::is_acyclic(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

impl PyGraph {
    fn check_vertex(&self, v: usize) -> PyResult<()> {
        if v >= self.inner.n() {
            return Err(value_err(format!("vertex {v} out of range for n={}", self.inner.n())));
        }
        Ok(())
    }
}

/// Output of an all-pairs run.
#[pyclass(frozen, name = "ApspResult", module = "sapsp_py")]
struct PyApspResult {
    inner: sapsp::ApspResult,
}

#[pymethods]
impl PyApspResult {
    /// Distance matrix, `matrix[source][target]`, `inf` when unreachable.
    #[getter]
    fn matrix(&self) -> Vec<Vec<f64>> {
        self.inner.matrix.clone()
    }

    /// Per-vertex (source, distance) lists including the (owner, 0) head.
    #[getter]
    fn lists(&self) -> Vec<Vec<(usize, f64)>> {
        self.inner.lists.clone()
    }

    #[getter]
    fn potentials(&self) -> Option<Vec<f64>> {
        self.inner.potentials.clone()
    }

    #[getter]
    fn engine(&self) -> &'static str {
        self.inner.engine.name()
    }

    #[getter]
    fn variant(&self) -> &'static str {
        self.inner.variant.name()
    }

    #[getter]
    fn counters<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let c = &self.inner.counters;
        let dict = PyDict::new(py);
        dict.set_item("cursor_advances", c.cursor_advances)?;
        dict.set_item("viability_checks", c.viability_checks)?;
        dict.set_item("psi_calls", c.psi_calls)?;
        dict.set_item("peak_aux_arcs", c.peak_aux_arcs)?;
        dict.set_item("peak_active_cursors", c.peak_active_cursors)?;
        dict.set_item("wall_ms", c.wall_time.as_secs_f64() * 1e3)?;
        Ok(dict)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn to_tsv(&self) -> String {
        self.inner.to_tsv()
    }

    fn __repr__(&self) -> String {
        format!(
            "ApspResult(n={}, engine={}, variant={})",
            self.inner.n,
            self.inner.engine.name(),
            self.inner.variant.name()
        )
    }
}

/// Solve all-pairs shortest paths on a non-negative graph.
#[pyfunction]
#[pyo3(signature = (graph, engine = "dijkstra", variant = "improved"))]
fn solve_apsp(graph: &PyGraph, engine: &str, variant: &str) -> PyResult<PyApspResult> {
    let result = sapsp::solve_apsp(&graph.inner, engine_from(engine)?, variant_from(variant)?)
        .map_err(runtime_err)?;
    Ok(PyApspResult { inner: result })
}

/// Solve all-pairs shortest paths on an acyclic graph with arbitrary
/// weights via reweighting.
#[pyfunction]
#[pyo3(signature = (graph, engine = "dag", variant = "improved"))]
fn solve_dag_apsp(graph: &PyGraph, engine: &str, variant: &str) -> PyResult<PyApspResult> {
    let result =
        sapsp::solve_dag_apsp_with(&graph.inner, engine_from(engine)?, variant_from(variant)?, |_| {})
            .map_err(runtime_err)?;
    Ok(PyApspResult { inner: result })
}

type SsspTuple = (Vec<f64>, Vec<Option<usize>>, Vec<Option<usize>>);

fn sssp_tuple(out: sapsp::SsspOutput) -> SsspTuple {
    (out.dist, out.parent, out.first_hop)
}

/// Single-source shortest paths by engine name; returns
/// (dist, parent, first_hop) with None for unreachable vertices.
#[pyfunction]
#[pyo3(signature = (graph, source, engine = "dijkstra"))]
fn sssp(graph: &PyGraph, source: usize, engine: &str) -> PyResult<SsspTuple> {
    graph.check_vertex(source)?;
    let out = engine_from(engine)?.solve(&graph.inner, source).map_err(value_err)?;
    Ok(sssp_tuple(out))
}

/// Brute-force all-pairs distances; the independent ground truth.
#[pyfunction]
fn floyd_warshall(graph: &PyGraph) -> PyResult<Vec<Vec<f64>>> {
    sapsp::floyd_warshall(&graph.inner).map_err(value_err)
}

/// Arc ids lying on at least one shortest path, and their count.
#[pyfunction]
fn essential_edges(graph: &PyGraph) -> PyResult<(Vec<usize>, usize)> {
    let dm = sapsp::floyd_warshall(&graph.inner).map_err(value_err)?;
    Ok(sapsp::essential_edges(&graph.inner, &dm))
}

/// Topological order of an acyclic graph.
#[pyfunction]
fn topo_order(graph: &PyGraph) -> PyResult<Vec<usize>> {
    Ok(sapsp::topo_order(&graph.inner).map_err(value_err)?.order)
}

type ArcTriple = (usize, usize, f64);

/// Potentials and reweighted arc lengths of an acyclic graph.
#[pyfunction]
fn johnson_reweight(graph: &PyGraph) -> PyResult<(Vec<f64>, Vec<ArcTriple>)> {
    let (reweighted, h) = sapsp::johnson_reweight(&graph.inner).map_err(value_err)?;
    let arcs = reweighted.arcs().iter().map(|a| (a.tail, a.head, a.length)).collect();
    Ok((h, arcs))
}

/// Check a result against the oracle: matrix equality, list validity,
/// and counter budgets. Returns {"passed", "mstar", "violations"}.
#[pyfunction]
fn verify<'py>(py: Python<'py>, graph: &PyGraph, result: &PyApspResult) -> PyResult<Bound<'py, PyDict>> {
    let g = &graph.inner;
    if result.inner.n != g.n() {
        return Err(value_err(format!(
            "result has n = {} but the graph has n = {}",
            result.inner.n,
            g.n()
        )));
    }
    let dm = sapsp::floyd_warshall(g).map_err(value_err)?;
    let (_, mstar) = sapsp::essential_edges(g, &dm);
    let mut report = sapsp::verify_matrix(&result.inner.matrix, &dm, Tolerance::for_graph(g))
        .map_err(value_err)?;
    report.merge(sapsp::verify_sorted_lists(
        &result.inner.lists,
        &dm,
        result.inner.potentials.as_deref(),
    ));
    report.merge(sapsp::verify_counters(&result.inner.counters, g, mstar, result.inner.variant));
    let dict = PyDict::new(py);
    dict.set_item("passed", report.passed())?;
    dict.set_item("mstar", mstar)?;
    let violations: Vec<(String, String)> = report
        .violations
        .into_iter()
        .map(|v| (v.check, v.witness))
        .collect();
    dict.set_item("violations", violations)?;
    Ok(dict)
}

#[pymodule]
fn sapsp_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyApspResult>()?;
    m.add_function(wrap_pyfunction!(solve_apsp, m)?)?;
    m.add_function(wrap_pyfunction!(solve_dag_apsp, m)?)?;
    m.add_function(wrap_pyfunction!(sssp, m)?)?;
    m.add_function(wrap_pyfunction!(floyd_warshall, m)?)?;
    m.add_function(wrap_pyfunction!(essential_edges, m)?)?;
    m.add_function(wrap_pyfunction!(topo_order, m)?)?;
    m.add_function(wrap_pyfunction!(johnson_reweight, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
