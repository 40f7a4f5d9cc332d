//! Python bindings. Partitions are accepted as `Partition` objects, text such
//! as `"4,2^3,1"`, or sequences of ints; structured results come back as dicts.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyType;
use serde::Serialize;

use symext::bijections;
use symext::blocks::{enumerate_block as enumerate, BlockId};
use symext::certifier::{self, CertifyOptions, RuleTag, Status};
use symext::signatures;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Serialize through JSON into plain Python objects.
fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<PyObject> {
    let text = serde_json::to_string(value).map_err(err)?;
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (text,))?.unbind())
}

#[pyclass(name = "Partition", module = "symext_py", frozen, eq, hash)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyPartition(symext::Partition);

#[derive(FromPyObject)]
enum PartitionArg {
    Obj(PyPartition),
    Text(String),
    Parts(Vec<usize>),
}

impl PartitionArg {
    fn get(self) -> PyResult<symext::Partition> {
        match self {
            PartitionArg::Obj(p) => Ok(p.0),
            PartitionArg::Text(s) => s.parse().map_err(err),
            PartitionArg::Parts(v) => symext::Partition::new(v).map_err(err),
        }
    }
}

fn wrap(l: symext::Partition) -> PyPartition {
    PyPartition(l)
}

#[pymethods]
impl PyPartition {
    #[new]
    fn new(value: PartitionArg) -> PyResult<Self> {
        value.get().map(PyPartition)
    }

    #[classmethod]
    fn parse(_cls: &Bound<'_, PyType>, text: &str) -> PyResult<Self> {
        text.parse().map(PyPartition).map_err(err)
    }

    #[getter]
    fn parts(&self) -> Vec<usize> {
        self.0.parts().to_vec()
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    #[getter]
    fn height(&self) -> usize {
        self.0.height()
    }

    fn transpose(&self) -> Self {
        PyPartition(self.0.transpose())
    }

    fn is_p_regular(&self, p: usize) -> bool {
        self.0.is_p_regular(p)
    }

    fn is_p_restricted(&self, p: usize) -> bool {
        self.0.is_p_restricted(p)
    }

    fn dominates(&self, other: PartitionArg) -> PyResult<bool> {
        self.0.dominates(&other.get()?).map_err(err)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    fn __len__(&self) -> usize {
        self.0.height()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Partition({:?})", self.0.to_text())
    }
}

#[pyclass(name = "Certificate", module = "symext_py", frozen)]
pub struct PyCertificate(certifier::Certificate);

#[pymethods]
impl PyCertificate {
    #[classmethod]
    fn from_json(_cls: &Bound<'_, PyType>, text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(PyCertificate).map_err(err)
    }

    #[getter]
    fn p(&self) -> usize {
        self.0.p
    }

    #[getter]
    fn start(&self) -> PyPartition {
        wrap(self.0.start.clone())
    }

    #[getter]
    fn certified(&self) -> bool {
        self.0.status == Status::Certified
    }

    #[getter]
    fn status(&self) -> String {
        self.0.status.to_string()
    }

    /// Rule names of the steps, in order.
    #[getter]
    fn rules(&self) -> Vec<String> {
        self.0.rules().iter().map(|r| r.to_string()).collect()
    }

    #[getter]
    fn terminal(&self) -> Option<String> {
        self.0.terminal.as_ref().map(|t| t.tag().to_string())
    }

    fn validate(&self) -> bool {
        certifier::validate(&self.0)
    }

    /// Messages describing why validation fails; empty when it succeeds.
    fn issues(&self) -> Vec<String> {
        certifier::validation_issues(&self.0)
            .into_iter()
            .map(|i| match i.step {
                Some(k) => format!("step {k}: {}", i.message),
                None => i.message,
            })
            .collect()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(err)
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<PyObject> {
        to_py(py, &self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Certificate({} {} at p = {}, {} steps)",
            self.0.status,
            self.0.start,
            self.0.p,
            self.0.steps.len()
        )
    }
}

fn options(
    rules: Option<Vec<String>>,
    max_steps: usize,
    max_nodes: usize,
) -> PyResult<CertifyOptions> {
    let mut o = match rules {
        None => CertifyOptions::default(),
        Some(names) => CertifyOptions::with_rules(
            names
                .iter()
                .map(|n| n.parse::<RuleTag>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(err)?,
        ),
    };
    o.max_steps = max_steps;
    o.max_nodes = max_nodes;
    Ok(o)
}

#[pyfunction]
fn analyze(py: Python<'_>, partition: PartitionArg, p: usize) -> PyResult<PyObject> {
    to_py(py, &symext::analyze(&partition.get()?, p).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (partition, p, rules = None, max_steps = 64, max_nodes = 20_000))]
fn certify(
    py: Python<'_>,
    partition: PartitionArg,
    p: usize,
    rules: Option<Vec<String>>,
    max_steps: usize,
    max_nodes: usize,
) -> PyResult<PyCertificate> {
    let l = partition.get()?;
    let o = options(rules, max_steps, max_nodes)?;
    py.allow_threads(|| certifier::certify(&l, p, &o))
        .map(PyCertificate)
        .map_err(err)
}

/// Check a certificate given as an object or as its JSON text.
#[pyfunction]
fn validate(certificate: &Bound<'_, PyAny>) -> PyResult<bool> {
    if let Ok(c) = certificate.downcast::<PyCertificate>() {
        return Ok(certifier::validate(&c.get().0));
    }
    let text: String = certificate.extract()?;
    let c: certifier::Certificate = serde_json::from_str(&text).map_err(err)?;
    Ok(certifier::validate(&c))
}

#[pyfunction]
#[pyo3(signature = (p, n, rules = None, max_steps = 64))]
fn survey(
    py: Python<'_>,
    p: usize,
    n: usize,
    rules: Option<Vec<String>>,
    max_steps: usize,
) -> PyResult<PyObject> {
    let o = options(rules, max_steps, 20_000)?;
    let rep = py
        .allow_threads(|| certifier::survey(p, n, &o))
        .map_err(err)?;
    to_py(py, &rep)
}

#[pyfunction]
fn core_and_weight(partition: PartitionArg, p: usize) -> PyResult<(PyPartition, usize)> {
    let (c, w) = symext::core_and_weight(&partition.get()?, p);
    Ok((wrap(c), w))
}

#[pyfunction]
fn quotient(partition: PartitionArg, p: usize) -> PyResult<Vec<PyPartition>> {
    let d = symext::AbacusDisplay::canonical(&partition.get()?, p);
    Ok(d.quotient().quotient().into_iter().map(wrap).collect())
}

#[pyfunction]
fn signature(py: Python<'_>, partition: PartitionArg, p: usize, i: usize) -> PyResult<PyObject> {
    to_py(py, &signatures::signature(&partition.get()?, p, i))
}

#[pyfunction]
fn eps(partition: PartitionArg, p: usize, i: usize) -> PyResult<usize> {
    Ok(signatures::eps(&partition.get()?, p, i))
}

#[pyfunction]
fn phi(partition: PartitionArg, p: usize, i: usize) -> PyResult<usize> {
    Ok(signatures::phi(&partition.get()?, p, i))
}

/// `ẽ_i^r λ`, or `None` when `r > ε_i(λ)`.
#[pyfunction]
#[pyo3(signature = (partition, p, i, r = 1))]
fn e_tilde(partition: PartitionArg, p: usize, i: usize, r: usize) -> PyResult<Option<PyPartition>> {
    Ok(signatures::e_tilde(&partition.get()?, p, i, r)
        .map_err(err)?
        .map(wrap))
}

/// `f̃_i^r λ`, or `None` when `r > φ_i(λ)`.
#[pyfunction]
#[pyo3(signature = (partition, p, i, r = 1))]
fn f_tilde(partition: PartitionArg, p: usize, i: usize, r: usize) -> PyResult<Option<PyPartition>> {
    Ok(signatures::f_tilde(&partition.get()?, p, i, r)
        .map_err(err)?
        .map(wrap))
}

#[pyfunction]
fn is_difficult(partition: PartitionArg, p: usize, i: usize) -> PyResult<bool> {
    signatures::is_difficult(&partition.get()?, p, i).map_err(err)
}

#[pyfunction]
fn mullineux(partition: PartitionArg, p: usize) -> PyResult<PyPartition> {
    bijections::mullineux(&partition.get()?, p)
        .map(wrap)
        .map_err(err)
}

#[pyfunction]
fn regularize(partition: PartitionArg, p: usize) -> PyResult<PyPartition> {
    Ok(wrap(bijections::regularize(&partition.get()?, p)))
}

#[pyfunction]
fn specht_irreducible(partition: PartitionArg, p: usize) -> PyResult<bool> {
    if p < 3 || !symext::is_prime(p) {
        return Err(err(format!("p must be an odd prime, got {p}")));
    }
    Ok(symext::specht::specht_irreducible(&partition.get()?, p))
}

#[pyfunction]
#[pyo3(signature = (core, weight, p, regular = false))]
fn enumerate_block(
    core: PartitionArg,
    weight: usize,
    p: usize,
    regular: bool,
) -> PyResult<Vec<PyPartition>> {
    let block = BlockId::new(core.get()?, weight, p).map_err(err)?;
    Ok(enumerate(&block, regular).into_iter().map(wrap).collect())
}

#[pyfunction]
#[pyo3(signature = (max_weight = 7))]
fn verify_tables(py: Python<'_>, max_weight: usize) -> PyResult<PyObject> {
    let rep = py.allow_threads(|| symext::tables::verify_tables(max_weight));
    to_py(py, &rep)
}

#[pyfunction]
fn zigzag_dim(py: Python<'_>, p: usize, m: usize, d: usize) -> PyResult<PyObject> {
    to_py(py, &symext::zigzag::basis_dimension(p, m, d).map_err(err)?)
}

#[pyfunction]
fn partitions_of(n: usize) -> Vec<PyPartition> {
    symext::partitions_of(n).into_iter().map(wrap).collect()
}

#[pyfunction]
fn regular_partitions_of(n: usize, p: usize) -> Vec<PyPartition> {
    symext::regular_partitions_of(n, p)
        .into_iter()
        .map(wrap)
        .collect()
}

#[pymodule]
fn symext_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPartition>()?;
    m.add_class::<PyCertificate>()?;
    m.add(
        "RULES",
        RuleTag::ALL
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>(),
    )?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(survey, m)?)?;
    m.add_function(wrap_pyfunction!(core_and_weight, m)?)?;
    m.add_function(wrap_pyfunction!(quotient, m)?)?;
    m.add_function(wrap_pyfunction!(signature, m)?)?;
    m.add_function(wrap_pyfunction!(eps, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(e_tilde, m)?)?;
    m.add_function(wrap_pyfunction!(f_tilde, m)?)?;
    m.add_function(wrap_pyfunction!(is_difficult, m)?)?;
    m.add_function(wrap_pyfunction!(mullineux, m)?)?;
    m.add_function(wrap_pyfunction!(regularize, m)?)?;
    m.add_function(wrap_pyfunction!(specht_irreducible, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_block, m)?)?;
    m.add_function(wrap_pyfunction!(verify_tables, m)?)?;
    m.add_function(wrap_pyfunction!(zigzag_dim, m)?)?;
    m.add_function(wrap_pyfunction!(partitions_of, m)?)?;
    m.add_function(wrap_pyfunction!(regular_partitions_of, m)?)?;
    Ok(())
}
