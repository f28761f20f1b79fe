//! Python bindings: `import bookpop_py`.
//!
//! Functions mirror the command-line subcommands. Evaluation reports are
//! returned as JSON strings so callers can `json.loads` them.

use std::path::PathBuf;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

pub mod api;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json(v: &impl serde::Serialize) -> PyResult<String> {
    serde_json::to_string(v).map_err(value_error)
}

/// Writes a synthetic corpus and returns the number of books.
#[pyfunction]
#[pyo3(signature = (path, books_per_category=20, noise_sigma=1.5, seed=0))]
fn synth(path: PathBuf, books_per_category: usize, noise_sigma: f64, seed: u64) -> PyResult<usize> {
    api::synth(&path, books_per_category, noise_sigma, seed).map_err(value_error)
}

/// Violation messages for a corpus file; empty when valid.
#[pyfunction]
fn validate(path: PathBuf) -> PyResult<Vec<String>> {
    api::validate(&path).map_err(value_error)
}

type Featurized = (Vec<String>, Vec<String>, Vec<Vec<f64>>, Vec<f64>);

/// `(columns, book_ids, rows, targets)` for a corpus file.
#[pyfunction]
fn featurize(path: PathBuf) -> PyResult<Featurized> {
    let m = api::load_matrix(&path).map_err(value_error)?;
    let columns = m.columns.iter().map(|f| f.name().to_string()).collect();
    Ok((columns, m.book_ids, m.rows, m.targets))
}

/// `(feature, weight)` pairs, best first.
#[pyfunction]
#[pyo3(signature = (path, k_neighbors=10, seed=0))]
fn rank(path: PathBuf, k_neighbors: usize, seed: u64) -> PyResult<Vec<(String, f64)>> {
    api::rank(&path, k_neighbors, seed).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (path, selector="all", folds=10, seed=0))]
fn eval_cv(path: PathBuf, selector: &str, folds: usize, seed: u64) -> PyResult<String> {
    let selector = api::selector(selector).map_err(value_error)?;
    to_json(&api::eval_cv(&path, selector, folds, seed).map_err(value_error)?)
}

#[pyfunction]
#[pyo3(signature = (path, seed=0))]
fn eval_topk(path: PathBuf, seed: u64) -> PyResult<String> {
    to_json(&api::eval_topk(&path, seed).map_err(value_error)?)
}

#[pyfunction]
#[pyo3(signature = (path, seed=0))]
fn eval_category(path: PathBuf, seed: u64) -> PyResult<String> {
    to_json(&api::eval_category(&path, seed).map_err(value_error)?)
}

#[pyfunction]
fn pearson_r(a: Vec<f64>, b: Vec<f64>) -> PyResult<f64> {
    bookpop::eval::pearson_r(&a, &b).map_err(value_error)
}

#[pyfunction]
fn rmse(truth: Vec<f64>, pred: Vec<f64>) -> PyResult<f64> {
    bookpop::eval::rmse(&truth, &pred).map_err(value_error)
}

#[pymodule]
fn bookpop_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(synth, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(featurize, m)?)?;
    m.add_function(wrap_pyfunction!(rank, m)?)?;
    m.add_function(wrap_pyfunction!(eval_cv, m)?)?;
    m.add_function(wrap_pyfunction!(eval_topk, m)?)?;
    m.add_function(wrap_pyfunction!(eval_category, m)?)?;
    m.add_function(wrap_pyfunction!(pearson_r, m)?)?;
    m.add_function(wrap_pyfunction!(rmse, m)?)?;
    Ok(())
}
