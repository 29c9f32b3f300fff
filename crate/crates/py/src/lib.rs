//! `toda_engine`: the engine's commands on in-memory JSON documents.
//!
//! Every function takes the algebra document (and the sequence document where
//! needed) as a string and returns the result document as a string, exactly as
//! the `engine` binary prints it. Failures raise `ValueError` for bad input and
//! `RuntimeError` for internal errors, with the result document as message.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use toda_core::io::{run_documents, Command, Params};

fn call(
    command: Command,
    algebra: &str,
    sequence: Option<&str>,
    n: Option<usize>,
    k: Option<u32>,
    budget: Option<u128>,
) -> PyResult<String> {
    let params = Params { command, n, k, budget };
    match run_documents(&params, algebra.as_bytes(), sequence.map(str::as_bytes)) {
        Ok(doc) => Ok(serde_json::to_string_pretty(&doc).expect("documents serialize")),
        Err(e) => {
            let text = serde_json::to_string_pretty(&e.document).expect("documents serialize");
            Err(if e.code == 1 {
                PyValueError::new_err(text)
            } else {
                PyRuntimeError::new_err(text)
            })
        }
    }
}

/// Run any engine command by name.
#[pyfunction]
#[pyo3(signature = (command, algebra, sequence=None, n=None, k=None, budget=None))]
fn run(
    command: &str,
    algebra: &str,
    sequence: Option<&str>,
    n: Option<usize>,
    k: Option<u32>,
    budget: Option<u128>,
) -> PyResult<String> {
    let command: Command = command.parse().map_err(PyValueError::new_err)?;
    call(command, algebra, sequence, n, k, budget)
}

#[pyfunction]
fn validate(algebra: &str) -> PyResult<String> {
    call(Command::Validate, algebra, None, None, None, None)
}

#[pyfunction]
#[pyo3(signature = (algebra, k=None))]
fn homology(algebra: &str, k: Option<u32>) -> PyResult<String> {
    call(Command::Homology, algebra, None, None, k, None)
}

#[pyfunction]
#[pyo3(signature = (algebra, sequence, n=None))]
fn toda(algebra: &str, sequence: &str, n: Option<usize>) -> PyResult<String> {
    call(Command::Toda, algebra, Some(sequence), n, None, None)
}

#[pyfunction]
fn massey(algebra: &str, sequence: &str) -> PyResult<String> {
    call(Command::Massey, algebra, Some(sequence), None, None, None)
}

#[pyfunction]
#[pyo3(signature = (algebra, sequence, n=None, budget=None))]
fn oracle(algebra: &str, sequence: &str, n: Option<usize>, budget: Option<u128>) -> PyResult<String> {
    call(Command::Oracle, algebra, Some(sequence), n, None, budget)
}

#[pyfunction]
#[pyo3(signature = (algebra, sequence, n=None))]
fn chain_complex(algebra: &str, sequence: &str, n: Option<usize>) -> PyResult<String> {
    call(Command::ChainComplex, algebra, Some(sequence), n, None, None)
}

#[pyfunction]
#[pyo3(signature = (algebra, sequence, n=None))]
fn adams_d(algebra: &str, sequence: &str, n: Option<usize>) -> PyResult<String> {
    call(Command::AdamsD, algebra, Some(sequence), n, None, None)
}

#[pymodule]
fn toda_engine(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(homology, m)?)?;
    m.add_function(wrap_pyfunction!(toda, m)?)?;
    m.add_function(wrap_pyfunction!(massey, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(chain_complex, m)?)?;
    m.add_function(wrap_pyfunction!(adams_d, m)?)?;
    Ok(())
}
