//! Python bindings: every function returns a JSON string.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hopftwist::catalog;
use hopftwist::hopf::{Deformation, Indices};
use hopftwist::verify::{self, RunConfig};

fn py_err(e: hopftwist::error::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_case(deformation: &str, indices: &str) -> Result<(Deformation, Indices), hopftwist::error::Error> {
    Ok((deformation.parse()?, indices.parse()?))
}

/// Run the verification suite; `config` uses the CLI's JSON schema.
#[pyfunction]
#[pyo3(signature = (config=None))]
fn run_verify(config: Option<&str>) -> PyResult<String> {
    let cfg = match config {
        Some(s) => RunConfig::from_json(s).map_err(py_err)?,
        None => RunConfig::default(),
    };
    Ok(verify::run(&cfg).map_err(py_err)?.to_json())
}

#[pyfunction]
fn catalog_dump() -> String {
    catalog::dump().to_string()
}

/// Derived and printed commutator tables for one case.
#[pyfunction]
#[pyo3(signature = (deformation, indices, order=4))]
fn spacetime_table(deformation: &str, indices: &str, order: u32) -> PyResult<String> {
    let (d, idx) = parse_case(deformation, indices).map_err(py_err)?;
    let cfg = RunConfig {
        deformations: vec![d],
        indices: verify::IndexSelection::Fixed(idx),
        order,
        ..RunConfig::default()
    };
    Ok(verify::emit_spacetime_tables(&cfg).map_err(py_err)?.to_string())
}

#[pyfunction]
#[pyo3(signature = (deformation, indices, order=4))]
fn contract(deformation: &str, indices: &str, order: u32) -> PyResult<String> {
    let (d, idx) = parse_case(deformation, indices).map_err(py_err)?;
    let idx = d.validate(&idx).map_err(py_err)?;
    Ok(verify::contraction_document(d, &idx, order).map_err(py_err)?.to_string())
}

#[pymodule]
fn pyhopftwist(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_dump, m)?)?;
    m.add_function(wrap_pyfunction!(spacetime_table, m)?)?;
    m.add_function(wrap_pyfunction!(contract, m)?)?;
    Ok(())
}
