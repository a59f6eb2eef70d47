//! Python bindings. Structured results come back as plain dicts and lists.

use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

use ::webca as core;
use core::additive::AdditiveRule;
use core::census::CensusOptions;
use core::config::{BinaryConfig, TernaryConfig};
use core::error::Error;
use core::percolation::PathType;
use core::replication::{LinkString, Signature, DEFAULT_ETHER_CAP};
use core::webca::WebRule;

fn err(e: Error) -> PyErr {
    match e {
        Error::Unresolved(_) | Error::MemoryCap { .. } => PyRuntimeError::new_err(e.to_string()),
        Error::Io(_) | Error::Checkpoint(_) => PyOSError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (s,))
}

fn path(s: &str) -> PyResult<PathType> {
    s.parse().map_err(err)
}

/// A built-in web rule.
#[pyclass(name = "WebRule", frozen)]
struct PyWebRule(WebRule);

#[pymethods]
impl PyWebRule {
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        core::webca::builtin_rule(name).map(PyWebRule).map_err(err)
    }

    #[getter]
    fn id(&self) -> String {
        self.0.id.clone()
    }

    /// Path types the rule complies with.
    fn compliance(&self) -> Vec<String> {
        let c = self.0.compliance();
        [PathType::Empty, PathType::Diagonal, PathType::Wide, PathType::Free(3), PathType::Free(4), PathType::Free(5)]
            .into_iter()
            .filter(|&p| c.complies(p))
            .map(|p| p.name())
            .collect()
    }

    /// Output state for the neighbourhood `(a, b, c, d, e)`.
    fn apply(&self, t: [u8; 5]) -> PyResult<u8> {
        if t.iter().any(|&s| s > 2) {
            return Err(PyValueError::new_err("states are 0, 1 or 2"));
        }
        Ok(self.0.apply(t))
    }

    /// Rows `0..=steps` from a ternary seed, over `[lo, lo + width)`.
    fn evolve(&self, seed: &str, steps: usize, lo: i64, width: usize) -> PyResult<Vec<String>> {
        let d = core::webca::evolve_web(&self.0, &TernaryConfig::parse(seed).map_err(err)?, steps).map_err(err)?;
        Ok(d.rows
            .iter()
            .map(|r| (0..width).map(|x| char::from(b'0' + r.get(lo + x as i64))).collect())
            .collect())
    }

    fn __repr__(&self) -> String {
        format!("WebRule('{}')", self.0.id)
    }
}

/// A level-2^m link word.
#[pyclass(name = "Link", frozen)]
struct PyLink(LinkString);

#[pymethods]
impl PyLink {
    #[new]
    fn new(bits: &str) -> PyResult<Self> {
        LinkString::parse(bits).map(PyLink).map_err(err)
    }

    #[getter]
    fn m(&self) -> u32 {
        self.0.m
    }

    fn hex(&self) -> String {
        self.0.hex()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_blocker(&self, path_type: &str, depth: usize) -> PyResult<bool> {
        Ok(core::replication::is_blocker(&self.0, path(path_type)?, depth))
    }

    fn is_nondegenerate(&self, depth: usize) -> bool {
        core::replication::is_nondegenerate(&self.0, depth)
    }

    fn equivalent(&self, other: &PyLink) -> bool {
        self.0.equivalent(&other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Link('{}')", self.0)
    }
}

/// Rows of an additive run (`rule` is `1or3` or `xor`) over `[lo, lo + width)`.
#[pyfunction]
fn evolve_additive(rule: &str, seed: &str, steps: usize, lo: i64, width: usize) -> PyResult<Vec<String>> {
    let rule: AdditiveRule = rule.parse().map_err(err)?;
    let d = core::additive::evolve(&BinaryConfig::parse(seed).map_err(err)?, rule, steps).map_err(err)?;
    Ok(d.rows
        .iter()
        .map(|r| r.window(lo, width).iter().map(|b| if b { '1' } else { '0' }).collect())
        .collect())
}

#[pyfunction]
#[pyo3(signature = (seed, m, l=None))]
fn compute_link(seed: &str, m: u32, l: Option<i64>) -> PyResult<PyLink> {
    let seed = BinaryConfig::parse(seed).map_err(err)?;
    let link = match l {
        Some(l) => core::replication::compute_link_with(&seed, l, m).map_err(err)?.0,
        None => core::replication::compute_link(&seed, m).map_err(err)?,
    };
    Ok(PyLink(link))
}

/// Ether reached from a periodic ternary row such as `(02)*`.
#[pyfunction]
#[pyo3(signature = (rule, config, cap=DEFAULT_ETHER_CAP))]
fn produce_ether<'py>(py: Python<'py>, rule: &PyWebRule, config: &str, cap: usize) -> PyResult<Bound<'py, PyAny>> {
    let e = core::replication::produce_ether(&rule.0, &TernaryConfig::parse(config).map_err(err)?, cap).map_err(err)?;
    to_py(py, &e)
}

#[pyfunction]
#[pyo3(signature = (rule, signature, cap=DEFAULT_ETHER_CAP))]
fn reflection_class<'py>(py: Python<'py>, rule: &PyWebRule, signature: &str, cap: usize) -> PyResult<Bound<'py, PyAny>> {
    let sig = Signature::parse(signature).map_err(err)?;
    let e = core::replication::ether_from_signature(&rule.0, &sig, cap).map_err(err)?;
    to_py(py, &core::replication::reflection_class(&e, &rule.0, cap).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (rule, seed, l=None, m_max=8))]
fn replication_certificate<'py>(py: Python<'py>, rule: &PyWebRule, seed: &str, l: Option<i64>, m_max: u32) -> PyResult<Bound<'py, PyAny>> {
    let seed = BinaryConfig::parse(seed).map_err(err)?;
    to_py(py, &core::replication::replication_certificate(&rule.0, &seed, l, m_max).map_err(err)?)
}

#[pyfunction]
fn verify_replicator<'py>(
    py: Python<'py>,
    rule: &PyWebRule,
    seed: &str,
    r: usize,
    signature: &str,
    horizon: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let e = core::replication::ether_from_signature(&rule.0, &Signature::parse(signature).map_err(err)?, DEFAULT_ETHER_CAP)
        .map_err(err)?;
    let seed = TernaryConfig::parse(seed).map_err(err)?;
    to_py(py, &core::replication::verify_replicator(&rule.0, &seed, r, &e, horizon).map_err(err)?)
}

/// Census over the Φ-image; returns the result with a `bounds` table added.
#[pyfunction]
#[pyo3(signature = (rule, m, path_type, workers=1, combine_reflections=true))]
fn run_census<'py>(
    py: Python<'py>,
    rule: &PyWebRule,
    m: u32,
    path_type: &str,
    workers: usize,
    combine_reflections: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let opts = CensusOptions {
        workers,
        combine_reflections,
        ..Default::default()
    };
    let p = path(path_type)?;
    let r = py.detach(|| core::census::run_census(&rule.0, m, p, &opts)).map_err(err)?;
    let mut v = serde_json::to_value(&r).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let b = core::census::lower_bounds(&r).map_err(err)?;
    v["bounds"] = serde_json::to_value(&b).map_err(|e| PyValueError::new_err(e.to_string()))?;
    to_py(py, &v)
}

#[pyfunction]
fn mc_crossing<'py>(py: Python<'py>, path_type: &str, t: usize, trials: u64, rng_seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let p = path(path_type)?;
    to_py(py, &py.detach(|| core::percolation::mc_crossing(p, t, trials, rng_seed)))
}

#[pyfunction]
fn exact_crossing(path_type: &str, t: usize) -> PyResult<(u64, u64)> {
    Ok(core::percolation::exact_crossing(path(path_type)?, t))
}

#[pymodule]
fn webca(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWebRule>()?;
    m.add_class::<PyLink>()?;
    m.add_function(wrap_pyfunction!(evolve_additive, m)?)?;
    m.add_function(wrap_pyfunction!(compute_link, m)?)?;
    m.add_function(wrap_pyfunction!(produce_ether, m)?)?;
    m.add_function(wrap_pyfunction!(reflection_class, m)?)?;
    m.add_function(wrap_pyfunction!(replication_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(verify_replicator, m)?)?;
    m.add_function(wrap_pyfunction!(run_census, m)?)?;
    m.add_function(wrap_pyfunction!(mc_crossing, m)?)?;
    m.add_function(wrap_pyfunction!(exact_crossing, m)?)?;
    Ok(())
}
