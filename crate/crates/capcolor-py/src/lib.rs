//! Python bindings: a thin `Graph` wrapper plus the coloring pipeline,
//! oracles, and generators as module-level functions.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyModule};

use capcolor::coloring::{self, Mode, DEFAULT_ORACLE_BUDGET};
use capcolor::decomposition::clique_cutset_decompose;
use capcolor::generators;
use capcolor::graph::VertexSet;
use capcolor::oracles;

#[pyclass(name = "Graph", frozen)]
#[derive(Clone)]
struct PyGraph {
    inner: capcolor::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = capcolor::Graph::from_edge_list(n, &edges)
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyGraph { inner })
    }

    #[staticmethod]
    fn parse_dimacs(text: &str) -> PyResult<Self> {
        let inner = capcolor::Graph::parse_dimacs(text)
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyGraph { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.n() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.inner.adjacent(u, v)
    }

    fn write_dimacs(&self) -> String {
        self.inner.write_dimacs()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

/// Run the full pipeline; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (graph, mode="permissive", budget=None))]
fn color<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    mode: &str,
    budget: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let mode = match mode {
        "strict" => Mode::Strict,
        "permissive" => Mode::Permissive,
        other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
    };
    let report =
        coloring::color_with_budget(&graph.inner, mode, budget.unwrap_or(DEFAULT_ORACLE_BUDGET))
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let out = PyDict::new(py);
    out.set_item("colors", &report.coloring.color_of)?;
    out.set_item("colors_used", report.colors_used)?;
    out.set_item("omega", report.omega)?;
    out.set_item("omega_exact", report.omega_exact)?;
    out.set_item("bound", report.bound)?;
    out.set_item("ratio", &report.ratio)?;
    out.set_item("class_violation", &report.class_violation)?;
    out.set_item("atoms", report.atoms)?;
    Ok(out)
}

/// Exhaustive (even-hole, cap) membership check with witnesses.
#[pyfunction]
#[pyo3(signature = (graph, budget=None))]
fn classify<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    budget: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let report =
        oracles::classify_membership(&graph.inner, budget.unwrap_or(DEFAULT_ORACLE_BUDGET));
    let out = PyDict::new(py);
    out.set_item("in_class", report.in_class)?;
    out.set_item("search_exhausted", report.search_exhausted)?;
    out.set_item("even_hole", report.even_hole.map(|h| h.cycle))?;
    match report.cap {
        Some(c) => {
            let cap = PyDict::new(py);
            cap.set_item("hole", c.hole.cycle)?;
            cap.set_item("apex", c.apex)?;
            out.set_item("cap", cap)?;
        }
        None => out.set_item("cap", py.None())?,
    }
    Ok(out)
}

#[pyfunction]
fn verify_coloring(graph: &PyGraph, colors: Vec<usize>, k: usize) -> PyResult<bool> {
    let c = capcolor::Coloring { color_of: colors, palette_size: k };
    oracles::check_coloring(&graph.inner, &c).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyfunction]
fn exact_chromatic_number(graph: &PyGraph) -> PyResult<usize> {
    oracles::exact_chromatic_number(&graph.inner)
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyfunction]
fn exact_clique_number(graph: &PyGraph) -> PyResult<usize> {
    oracles::exact_clique_number(&graph.inner).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyfunction]
fn exact_independence_number(graph: &PyGraph) -> PyResult<usize> {
    oracles::exact_independence_number(&graph.inner)
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Perfect elimination ordering if the graph is chordal, else None.
#[pyfunction]
fn chordal_peo(graph: &PyGraph) -> Option<Vec<usize>> {
    oracles::is_chordal(&graph.inner)
}

/// Atom vertex lists of the clique-cutset decomposition.
#[pyfunction]
fn atoms(graph: &PyGraph) -> Vec<Vec<usize>> {
    clique_cutset_decompose(&graph.inner)
        .leaves()
        .into_iter()
        .map(|a: &VertexSet| a.iter().collect())
        .collect()
}

#[pyfunction]
fn beta_greedy(graph: &PyGraph) -> (Vec<usize>, usize) {
    let c = capcolor::beta_greedy_color(&graph.inner);
    (c.color_of, c.palette_size)
}

#[pyfunction]
fn cycle(n: usize) -> PyResult<PyGraph> {
    generators::cycle(n)
        .map(|g| PyGraph { inner: g })
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyfunction]
fn complete(n: usize) -> PyGraph {
    PyGraph { inner: generators::complete(n) }
}

#[pyfunction]
fn hajos() -> PyGraph {
    PyGraph { inner: generators::hajos() }
}

#[pyfunction]
fn gk(k: usize) -> PyResult<PyGraph> {
    generators::c5_clique_blowup(k)
        .map(|g| PyGraph { inner: g })
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyfunction]
fn blowup(base: &PyGraph, sizes: Vec<usize>) -> PyResult<PyGraph> {
    generators::blowup(&base.inner, &sizes)
        .map(|g| PyGraph { inner: g })
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyfunction]
fn random_chordal(n: usize, seed: u64) -> PyGraph {
    PyGraph { inner: generators::random_chordal(n, seed) }
}

#[pyfunction]
#[pyo3(signature = (n, p, seed, max_tries=100))]
fn random_in_class(n: usize, p: f64, seed: u64, max_tries: usize) -> Option<PyGraph> {
    generators::random_in_class(n, p, seed, max_tries).map(|g| PyGraph { inner: g })
}

#[pymodule]
fn capcolor_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(color, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(exact_chromatic_number, m)?)?;
    m.add_function(wrap_pyfunction!(exact_clique_number, m)?)?;
    m.add_function(wrap_pyfunction!(exact_independence_number, m)?)?;
    m.add_function(wrap_pyfunction!(chordal_peo, m)?)?;
    m.add_function(wrap_pyfunction!(atoms, m)?)?;
    m.add_function(wrap_pyfunction!(beta_greedy, m)?)?;
    m.add_function(wrap_pyfunction!(cycle, m)?)?;
    m.add_function(wrap_pyfunction!(complete, m)?)?;
    m.add_function(wrap_pyfunction!(hajos, m)?)?;
    m.add_function(wrap_pyfunction!(gk, m)?)?;
    m.add_function(wrap_pyfunction!(blowup, m)?)?;
    m.add_function(wrap_pyfunction!(random_chordal, m)?)?;
    m.add_function(wrap_pyfunction!(random_in_class, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bindings_color_cycle() {
        Python::initialize();
        Python::attach(|py| {
            let g = cycle(5).unwrap();
            let report = color(py, &g, "permissive", None).unwrap();
            let used: usize =
                report.get_item("colors_used").unwrap().unwrap().extract().unwrap();
            assert_eq!(used, 3);
            assert!(verify_coloring(
                &g,
                report.get_item("colors").unwrap().unwrap().extract().unwrap(),
                used
            )
            .unwrap());
        });
    }

    #[test]
    fn bindings_reject_bad_mode() {
        Python::initialize();
        Python::attach(|py| {
            assert!(color(py, &hajos(), "bogus", None).is_err());
        });
    }
}
