//! Python bindings: finite groups, Bi-Cayley instances, exact connectivity,
//! and both super-λ decision routes. Structured results (witnesses, full
//! instance records) come back as JSON strings so the Python side sees the
//! same report format the CLI writes.

use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use bicayley::connectivity::{self, DEFAULT_ORACLE_THRESHOLD};
use bicayley::criteria::{self, WitnessSearchOptions};
use bicayley::digraph::{build_bicayley, BiCayleySpec, Digraph};
use bicayley::export;
use bicayley::harness::{self, SweepConfig};
use bicayley::{ElementSet, Error, FiniteGroup};

fn err(e: Error) -> PyErr {
    match e {
        Error::InvalidArgument(_) | Error::Descriptor(_) | Error::TableFormat(_) => {
            PyValueError::new_err(e.to_string())
        }
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

#[pyclass(frozen, name = "Group")]
struct PyGroup {
    inner: Arc<FiniteGroup>,
}

#[pymethods]
impl PyGroup {
    /// Build from a descriptor: cyclic:6, dihedral:4, symmetric:4,
    /// product:cyclic:2,cyclic:4, table:/path.json
    #[new]
    fn new(descriptor: &str) -> PyResult<Self> {
        Ok(PyGroup {
            inner: Arc::new(FiniteGroup::from_descriptor(descriptor).map_err(err)?),
        })
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    fn label(&self) -> String {
        self.inner.label().to_string()
    }

    fn multiply(&self, a: usize, b: usize) -> PyResult<usize> {
        self.inner.multiply(a, b).map_err(err)
    }

    fn inverse(&self, a: usize) -> PyResult<usize> {
        self.inner.inverse(a).map_err(err)
    }

    fn element_order(&self, a: usize) -> PyResult<usize> {
        self.inner.element_order(a).map_err(err)
    }

    fn is_subgroup(&self, members: Vec<usize>) -> bool {
        self.inner.is_subgroup(&ElementSet::new(members))
    }

    fn generated_subgroup(&self, generators: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(self
            .inner
            .generated_subgroup(&ElementSet::new(generators))
            .map_err(err)?
            .members()
            .to_vec())
    }

    fn subgroups(&self) -> PyResult<Vec<Vec<usize>>> {
        Ok(self
            .inner
            .all_subgroups()
            .map_err(err)?
            .into_iter()
            .map(|h| h.members().to_vec())
            .collect())
    }

    fn left_cosets(&self, subgroup: Vec<usize>) -> PyResult<Vec<Vec<usize>>> {
        let h = self
            .inner
            .subgroup_from_set(&ElementSet::new(subgroup))
            .map_err(err)?;
        Ok(self
            .inner
            .left_cosets(&h)
            .map_err(err)?
            .into_iter()
            .map(|c| c.members().to_vec())
            .collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "Group({}, order={})",
            self.inner.label(),
            self.inner.order()
        )
    }
}

#[pyclass(frozen, name = "BiCayley")]
struct PyBiCayley {
    spec: BiCayleySpec,
    digraph: Digraph,
}

#[pymethods]
impl PyBiCayley {
    #[new]
    fn new(group: &PyGroup, t0: Vec<usize>, t1: Vec<usize>) -> PyResult<Self> {
        let spec = BiCayleySpec::new(
            group.inner.clone(),
            ElementSet::new(t0),
            ElementSet::new(t1),
        )
        .map_err(err)?;
        let digraph = build_bicayley(&spec);
        Ok(PyBiCayley { spec, digraph })
    }

    fn vertex_count(&self) -> usize {
        self.digraph.vertex_count()
    }

    fn arc_count(&self) -> usize {
        self.digraph.arc_count()
    }

    fn arcs(&self) -> Vec<(usize, usize)> {
        self.digraph.arcs()
    }

    /// (δ⁺, δ⁻, δ)
    fn min_degrees(&self) -> (usize, usize, usize) {
        self.digraph.min_degrees()
    }

    fn is_strongly_connected(&self) -> bool {
        self.digraph.is_strongly_connected()
    }

    fn is_directed_cycle(&self) -> bool {
        self.digraph.is_directed_cycle()
    }

    fn is_symmetric_cycle(&self) -> bool {
        self.digraph.is_symmetric_cycle()
    }

    /// Strong connectivity decided from (G, T0, T1) alone.
    fn strong_connectivity_criterion(&self) -> bool {
        criteria::strong_connectivity_criterion(&self.spec)
    }

    /// (κ, λ, δ) prediction for strongly connected instances, else None.
    fn predicted_connectivities(&self) -> Option<(usize, usize, usize)> {
        criteria::predict_connectivities(&self.spec)
    }

    fn vertex_connectivity(&self) -> PyResult<usize> {
        connectivity::vertex_connectivity(&self.digraph).map_err(err)
    }

    fn arc_connectivity(&self) -> PyResult<usize> {
        connectivity::arc_connectivity(&self.digraph).map_err(err)
    }

    #[pyo3(signature = (strict_subsets = false))]
    fn is_super_lambda_algebraic(&self, strict_subsets: bool) -> PyResult<bool> {
        criteria::is_super_lambda_algebraic(&self.spec, WitnessSearchOptions { strict_subsets })
            .map_err(err)
    }

    #[pyo3(signature = (threshold = DEFAULT_ORACLE_THRESHOLD))]
    fn is_super_lambda_bruteforce(&self, threshold: usize) -> PyResult<(bool, Option<Vec<usize>>)> {
        connectivity::is_super_lambda_bruteforce(&self.digraph, threshold).map_err(err)
    }

    /// Super-λ failure witness as a JSON string, or None.
    #[pyo3(signature = (strict_subsets = false))]
    fn find_witness(&self, strict_subsets: bool) -> PyResult<Option<String>> {
        let witness = criteria::find_super_lambda_witness(
            &self.spec,
            WitnessSearchOptions { strict_subsets },
        )
        .map_err(err)?;
        witness
            .map(|w| serde_json::to_string(&w).map_err(|e| PyRuntimeError::new_err(e.to_string())))
            .transpose()
    }

    /// Full check-pipeline record as a JSON string.
    #[pyo3(signature = (oracle_threshold = DEFAULT_ORACLE_THRESHOLD))]
    fn analyze_json(&self, oracle_threshold: usize) -> PyResult<String> {
        let config = SweepConfig {
            oracle_threshold,
            ..SweepConfig::default()
        };
        config.validate().map_err(err)?;
        let record = harness::run_instance(&self.spec, &config);
        serde_json::to_string_pretty(&record).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    fn to_dot(&self) -> String {
        export::digraph_dot(&self.digraph)
    }

    fn to_json(&self) -> String {
        export::digraph_json(&self.digraph)
    }

    fn __repr__(&self) -> String {
        format!("BiCayley({})", self.spec.fingerprint())
    }
}

/// Run a seeded sweep over group descriptors and return the summary JSON.
#[pyfunction]
#[pyo3(signature = (groups, mode = "exhaustive", samples = 100, seed = 0, oracle_threshold = DEFAULT_ORACLE_THRESHOLD))]
fn sweep_summary_json(
    groups: Vec<String>,
    mode: &str,
    samples: usize,
    seed: u64,
    oracle_threshold: usize,
) -> PyResult<String> {
    let config = SweepConfig {
        group_descriptors: groups,
        mode: mode.parse().map_err(err)?,
        sample_count: samples,
        rng_seed: seed,
        oracle_threshold,
        ..SweepConfig::default()
    };
    config.validate().map_err(err)?;
    let records = harness::run_sweep(&config).map_err(err)?;
    let summary = harness::summarize(&records);
    serde_json::to_string_pretty(&summary).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pymodule]
fn bicayley_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyBiCayley>()?;
    m.add_function(wrap_pyfunction!(sweep_summary_json, m)?)?;
    Ok(())
}
