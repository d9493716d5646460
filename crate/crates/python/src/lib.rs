//! Python bindings. Diagrams and reports cross the boundary as JSON text in
//! the same formats the command-line tool reads and writes; vertices are
//! 1-based.

use num_bigint::BigUint;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use coxmut::coxeter::TypeLabel;
use coxmut::exchange::{canonical_form, classify_mutation_type, Diagram, ExchangeMatrix};
use coxmut::manifold::tables::{check_row, table};
use coxmut::manifold::{euclidean_quotient_report, manifold_invariants, verify_torsion_free, ManifoldError};
use coxmut::presentation::{build_presentation, emit_presentation};
use coxmut::Caps;

fn invalid(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn manifold(e: ManifoldError) -> PyErr {
    match e {
        ManifoldError::CapExceeded(_) => PyRuntimeError::new_err(e.to_string()),
        other => invalid(other),
    }
}

fn caps() -> PyResult<Caps> {
    Caps::from_env().map_err(invalid)
}

fn matrix(text: &str) -> PyResult<ExchangeMatrix> {
    ExchangeMatrix::from_json(text).map_err(invalid)
}

fn to_json(value: &impl serde::Serialize) -> String {
    serde_json::to_string(value).expect("values serialize")
}

fn zero_based(rank: usize, seq: &[usize]) -> PyResult<Vec<usize>> {
    seq.iter()
        .map(|&k| {
            if k == 0 || k > rank {
                Err(invalid(format!("vertex {k} is not in 1..={rank}")))
            } else {
                Ok(k - 1)
            }
        })
        .collect()
}

/// Mutates a diagram at the 1-based vertex `k`.
#[pyfunction]
fn mutate(diagram: &str, k: usize) -> PyResult<String> {
    let m = matrix(diagram)?;
    let seq = zero_based(m.rank(), &[k])?;
    Ok(m.mutate_along(&seq).map_err(invalid)?.to_json())
}

/// Mutates a diagram along a sequence of 1-based vertices.
#[pyfunction]
fn mutate_along(diagram: &str, sequence: Vec<usize>) -> PyResult<String> {
    let m = matrix(diagram)?;
    let seq = zero_based(m.rank(), &sequence)?;
    Ok(m.mutate_along(&seq).map_err(invalid)?.to_json())
}

#[pyfunction]
fn canonical_key(diagram: &str) -> PyResult<String> {
    Ok(canonical_form(&Diagram::from_matrix(&matrix(diagram)?)).to_hex())
}

#[pyfunction]
fn classify(diagram: &str) -> PyResult<String> {
    let t = classify_mutation_type(&matrix(diagram)?, &caps()?).map_err(invalid)?;
    Ok(to_json(&t))
}

/// The presentation of the diagram's group in the line grammar.
#[pyfunction]
fn presentation(diagram: &str) -> PyResult<String> {
    let p = build_presentation(&Diagram::from_matrix(&matrix(diagram)?), Vec::new()).map_err(invalid)?;
    Ok(emit_presentation(&p))
}

#[pyfunction]
fn analyze(diagram: &str) -> PyResult<String> {
    let report = manifold_invariants(&matrix(diagram)?, &caps()?).map_err(manifold)?;
    Ok(to_json(&report))
}

#[pyfunction]
fn verify(diagram: &str) -> PyResult<String> {
    let cert = verify_torsion_free(&matrix(diagram)?, &caps()?).map_err(manifold)?;
    Ok(to_json(&cert))
}

#[pyfunction]
fn euclidean_report(diagram: &str) -> PyResult<String> {
    let report = euclidean_quotient_report(&matrix(diagram)?, &caps()?).map_err(manifold)?;
    Ok(to_json(&report))
}

/// Runs the search for every row of reference table 1 or 2.
#[pyfunction]
fn check_table(number: u8) -> PyResult<String> {
    let rows = table(number).ok_or_else(|| invalid(format!("there is no table {number}")))?;
    let caps = caps()?;
    let checks = rows.iter().map(|row| check_row(row, &caps)).collect::<Result<Vec<_>, _>>().map_err(manifold)?;
    Ok(to_json(&checks))
}

/// Order of a finite Weyl or Coxeter group given by name, such as `"E8"`.
#[pyfunction]
fn group_order(name: &str) -> PyResult<BigUint> {
    TypeLabel::parse(name)
        .and_then(|label| label.order())
        .ok_or_else(|| invalid(format!("{name:?} is not a finite type")))
}

#[pymodule]
fn coxmut_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(mutate, m)?)?;
    m.add_function(wrap_pyfunction!(mutate_along, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_key, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(presentation, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(euclidean_report, m)?)?;
    m.add_function(wrap_pyfunction!(check_table, m)?)?;
    m.add_function(wrap_pyfunction!(group_order, m)?)?;
    Ok(())
}
