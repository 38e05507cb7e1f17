//! Python bindings for the sorting-network toolkit.

use std::time::Duration;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use sortnet::encode::{build, to_dimacs, EncodeOptions};
use sortnet::network::unsorted_inputs;
use sortnet::prover::{self, Mode, ProverConfig};
use sortnet::solver::SolverConfig;
use sortnet::{words, Layer, Sentence, SetKind};

fn err(e: sortnet::Error) -> PyErr {
    match e {
        sortnet::Error::Io(_) | sortnet::Error::SolverSpawn { .. } | sortnet::Error::NoSolver => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A comparator network; layers are lists of `(i, j)` channel pairs, 1-based.
#[pyclass(name = "Network", module = "sortnet_py", eq)]
#[derive(Clone, PartialEq)]
struct PyNetwork {
    inner: sortnet::Network,
}

#[pymethods]
impl PyNetwork {
    #[new]
    fn new(n: usize, layers: Vec<Vec<(usize, usize)>>) -> PyResult<Self> {
        let layers = layers.iter().map(|l| Layer::from_pairs(l)).collect();
        Ok(PyNetwork { inner: sortnet::Network::from_layers(n, layers).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyNetwork { inner: sortnet::Network::from_json(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn channels(&self) -> usize {
        self.inner.channels()
    }

    #[getter]
    fn depth(&self) -> usize {
        self.inner.depth()
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    fn layers(&self) -> Vec<Vec<(usize, usize)>> {
        self.inner.layers().iter().map(|l| l.comparators().iter().map(|c| (c.low, c.high)).collect()).collect()
    }

    /// Sorts a list of integers through the network.
    fn evaluate(&self, values: Vec<i64>) -> PyResult<Vec<i64>> {
        self.inner.evaluate_values(&values).map_err(err)
    }

    /// Output set as integers; bit `k-1` holds channel `k`.
    fn outputs(&self) -> PyResult<Vec<u64>> {
        Ok(self.inner.outputs().map_err(err)?.bits().to_vec())
    }

    fn is_sorting_network(&self) -> bool {
        self.inner.is_sorting_network()
    }

    fn reflect(&self) -> Self {
        PyNetwork { inner: self.inner.reflect() }
    }

    fn untangle(&self) -> Self {
        PyNetwork { inner: self.inner.untangle() }
    }

    /// `perm[i-1]` is the new position of channel `i`.
    fn permute(&self, perm: Vec<usize>) -> PyResult<Self> {
        Ok(PyNetwork { inner: self.inner.permute(&perm).map_err(err)? })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Network({}, \"{}\")", self.inner.channels(), self.inner)
    }
}

/// Canonical sentence of a two-layer network.
#[pyfunction]
fn sentence_of(net: &PyNetwork) -> PyResult<String> {
    Ok(words::sentence_of(&net.inner).map_err(err)?.to_string())
}

/// Two-layer network over the adjacent first layer with the given sentence.
#[pyfunction]
fn net_of(sentence: &str) -> PyResult<PyNetwork> {
    let s: Sentence = sentence.parse().map_err(err)?;
    Ok(PyNetwork { inner: words::net_of(&s) })
}

/// Sentences of a class family: `rgn`, `rsn` or `rn`.
#[pyfunction]
fn generate(n: usize, set: &str) -> PyResult<Vec<String>> {
    let kind: SetKind = set.parse().map_err(err)?;
    Ok(words::generate_sentences(n, kind).map_err(err)?.iter().map(ToString::to_string).collect())
}

#[pyfunction]
fn counts<'py>(py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyDict>> {
    let row = sortnet::tables::counts(n).map_err(err)?;
    let d = PyDict::new_bound(py);
    d.set_item("n", row.n)?;
    d.set_item("G", row.g)?;
    d.set_item("RG", row.rg)?;
    d.set_item("S", row.s)?;
    d.set_item("RS", row.rs)?;
    d.set_item("R", row.r)?;
    d.set_item("A", row.a)?;
    Ok(d)
}

#[pyfunction]
fn is_saturated(net: &PyNetwork) -> PyResult<bool> {
    sortnet::saturation::is_saturated(&net.inner).map_err(err)
}

#[pyfunction]
fn saturate(net: &PyNetwork) -> PyResult<PyNetwork> {
    Ok(PyNetwork { inner: sortnet::saturation::saturate(&net.inner).map_err(err)? })
}

/// A permutation `pi` with `outputs(b) ⊆ pi(outputs(a))`, or `None`.
#[pyfunction]
fn subsumes(b: &PyNetwork, a: &PyNetwork) -> PyResult<Option<Vec<usize>>> {
    Ok(sortnet::saturation::subsumes(&b.inner, &a.inner).map_err(err)?.map(|w| w.permutation))
}

/// DIMACS text for "some depth-`depth` extension of `prefix` sorts".
#[pyfunction]
#[pyo3(signature = (n, depth, pad=0, prefix=None, sigma1=true, sigma2=true, sigma3=true))]
fn encode(
    n: usize,
    depth: usize,
    pad: usize,
    prefix: Option<PyNetwork>,
    sigma1: bool,
    sigma2: bool,
    sigma3: bool,
) -> PyResult<String> {
    let opts = EncodeOptions { sigma1, sigma2, sigma3, pad, prefix: prefix.map(|p| p.inner) };
    let inputs = unsorted_inputs(n, opts.prefix.as_ref()).map_err(err)?;
    let (_, cnf) = build(n, depth, &inputs, &opts).map_err(err)?;
    Ok(to_dimacs(&cnf))
}

fn prover_config(solver: Option<String>, timeout: f64) -> PyResult<ProverConfig> {
    let cfg = match solver {
        Some(path) => SolverConfig::new(path),
        None => SolverConfig::discover().map_err(err)?,
    };
    if !(timeout > 0.0) {
        return Err(PyValueError::new_err("timeout must be positive"));
    }
    Ok(ProverConfig::new(cfg.with_timeout(Duration::from_secs_f64(timeout))))
}

/// Searches for a sorting network; `mode` is `free`, `layer1` or `two-layer`.
#[pyfunction]
#[pyo3(signature = (n, depth, mode="two-layer", solver=None, timeout=3600.0))]
fn find_network(
    py: Python<'_>,
    n: usize,
    depth: usize,
    mode: &str,
    solver: Option<String>,
    timeout: f64,
) -> PyResult<Option<PyNetwork>> {
    let mode: Mode = mode.parse().map_err(err)?;
    let cfg = prover_config(solver, timeout)?;
    let (found, _) = py.allow_threads(|| prover::find_network(n, depth, mode, &cfg)).map_err(err)?;
    Ok(found.map(|inner| PyNetwork { inner }))
}

/// Lower-bound campaign; returns the JSON report.
#[pyfunction]
#[pyo3(signature = (n, depth, pads=None, solver=None, timeout=3600.0))]
fn prove_lower_bound(
    py: Python<'_>,
    n: usize,
    depth: usize,
    pads: Option<Vec<usize>>,
    solver: Option<String>,
    timeout: f64,
) -> PyResult<String> {
    let pads = pads.unwrap_or_else(|| prover::default_pads(n));
    let cfg = prover_config(solver, timeout)?;
    let report = py.allow_threads(|| prover::prove_lower_bound(n, depth, &pads, &cfg)).map_err(err)?;
    Ok(report.to_json())
}

#[pymodule]
fn sortnet_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNetwork>()?;
    m.add_function(wrap_pyfunction!(sentence_of, m)?)?;
    m.add_function(wrap_pyfunction!(net_of, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(counts, m)?)?;
    m.add_function(wrap_pyfunction!(is_saturated, m)?)?;
    m.add_function(wrap_pyfunction!(saturate, m)?)?;
    m.add_function(wrap_pyfunction!(subsumes, m)?)?;
    m.add_function(wrap_pyfunction!(encode, m)?)?;
    m.add_function(wrap_pyfunction!(find_network, m)?)?;
    m.add_function(wrap_pyfunction!(prove_lower_bound, m)?)?;
    Ok(())
}
