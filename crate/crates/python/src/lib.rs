//! Python bindings: build, load and query complexity tables, run the
//! expression oracle, rebuild shortest expressions and derive sequences.

use std::path::PathBuf;

use intcomplexity::analysis::{
    check_defect_rank, check_e_closed, check_e_primes, check_log_bound, check_pow2_plus1,
    check_prime_step, check_products, derive_sequences, mersenne_table, reconstruct,
    top_log_complexity, Policy, ProductKind, SeqEntry,
};
use intcomplexity::{
    build_dp, build_sieve, load, oracle_complexity, oracle_default, save, ComplexityTable,
    DpOptions, Error, ExprTree,
};
use pyo3::exceptions::{PyIOError, PyKeyError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io { .. } | Error::Integrity { .. } | Error::UnsupportedVersion(_) => {
            PyIOError::new_err(e.to_string())
        }
        Error::Contract(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A complexity table for `n = 1..=limit`, optionally with ranks.
#[pyclass(name = "Table", module = "pyintcx", frozen)]
struct PyTable {
    inner: ComplexityTable,
}

#[pymethods]
impl PyTable {
    /// Relaxation sieve; `ranks=True` also records rank(n).
    #[staticmethod]
    #[pyo3(signature = (limit, ranks = false))]
    fn sieve(py: Python<'_>, limit: u64, ranks: bool) -> PyResult<Self> {
        let inner = py.detach(|| build_sieve(limit, ranks)).map_err(py_err)?;
        Ok(PyTable { inner })
    }

    /// Sequential builder; no ranks.
    #[staticmethod]
    fn dp(py: Python<'_>, limit: u64) -> PyResult<Self> {
        let inner = py.detach(|| build_dp(limit, &DpOptions::default())).map_err(py_err)?;
        Ok(PyTable { inner })
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        Ok(PyTable { inner: load(&path).map_err(py_err)? })
    }

    fn save(&self, path: PathBuf) -> PyResult<()> {
        save(&self.inner, &path).map_err(py_err)
    }

    #[getter]
    fn limit(&self) -> u64 {
        self.inner.limit()
    }

    #[getter]
    fn algorithm(&self) -> &'static str {
        self.inner.algorithm().as_str()
    }

    #[getter]
    fn has_ranks(&self) -> bool {
        self.inner.has_ranks()
    }

    fn __len__(&self) -> usize {
        self.inner.limit() as usize
    }

    fn __getitem__(&self, n: u64) -> PyResult<u32> {
        self.inner.get(n).ok_or_else(|| PyKeyError::new_err(n))
    }

    fn __repr__(&self) -> String {
        format!(
            "Table(limit={}, algorithm='{}', ranks={})",
            self.inner.limit(),
            self.inner.algorithm().as_str(),
            if self.inner.has_ranks() { "True" } else { "False" }
        )
    }

    fn complexity(&self, n: u64) -> PyResult<u32> {
        self.inner.complexity(n).map_err(py_err)
    }

    /// rank(n), or None if the table has no ranks.
    fn rank(&self, n: u64) -> PyResult<Option<u32>> {
        self.inner.complexity(n).map_err(py_err)?;
        Ok(self.inner.rank(n))
    }

    /// Complexities as `bytes`; index 0 is a placeholder.
    fn complexity_bytes<'py>(&self, py: Python<'py>) -> Bound<'py, pyo3::types::PyBytes> {
        pyo3::types::PyBytes::new(py, self.inner.complexity_bytes())
    }

    /// A shortest expression for `n` as `(postfix, infix, height)`.
    /// `policy` is `"any"` or `"min_height"`.
    #[pyo3(signature = (n, policy = "any"))]
    fn reconstruct(&self, n: u64, policy: &str) -> PyResult<(String, String, u32)> {
        let policy = match policy {
            "any" => Policy::AnyShortest,
            "min_height" => Policy::MinHeight,
            other => return Err(PyValueError::new_err(format!("unknown policy {other:?}"))),
        };
        let e = reconstruct(&self.inner, n, policy).map_err(py_err)?;
        Ok((e.to_postfix(), e.to_string(), e.height()))
    }

    /// Dict of `e`, `E`, `E2` and (with ranks) `r`, each a list of
    /// `(index, value, reliable)`.
    fn sequences<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let s = derive_sequences(&self.inner);
        let rows = |xs: &[SeqEntry]| -> Vec<(u32, u64, bool)> {
            xs.iter().map(|x| (x.index, x.value, x.reliable)).collect()
        };
        let d = PyDict::new(py);
        d.set_item("e", rows(&s.e))?;
        d.set_item("E", rows(&s.e_max))?;
        d.set_item("E2", rows(&s.e2_max))?;
        if let Some(r) = &s.r {
            d.set_item("r", rows(r))?;
        }
        Ok(d)
    }

    /// The `count` largest `‖n‖ / log₃ n` as `(n, complexity, logc, rank)`.
    #[pyo3(signature = (count = 16))]
    fn top_log(&self, count: usize) -> Vec<(u64, u32, f64, Option<u32>)> {
        top_log_complexity(&self.inner, count)
            .into_iter()
            .map(|r| (r.n, r.complexity, r.logc, r.rank))
            .collect()
    }

    /// Run one hypothesis check; returns `(holds, checked, counterexamples)`
    /// with counterexamples as `(n, detail)`.
    fn verify(&self, check: &str) -> PyResult<(bool, u64, Vec<(u64, String)>)> {
        let t = &self.inner;
        let r = match check {
            "pow2" => check_products(t, ProductKind::Pow2),
            "pow3" => check_products(t, ProductKind::Pow3),
            "pow235" => check_products(t, ProductKind::Pow235),
            "pow2_plus1" => check_pow2_plus1(t),
            "mersenne" => mersenne_table(t).report,
            "defect_rank" => check_defect_rank(t).map_err(py_err)?,
            "e_closed" => check_e_closed(t, &derive_sequences(t)),
            "e_primes" => check_e_primes(t, &derive_sequences(t)),
            "prime_step" => check_prime_step(t),
            "log_bound" => check_log_bound(t, &derive_sequences(t)),
            other => return Err(PyValueError::new_err(format!("unknown check {other:?}"))),
        };
        let ce = r.counterexamples.iter().map(|c| (c.n, c.detail.clone())).collect();
        Ok((r.holds(), r.checked, ce))
    }
}

/// Exhaustive enumeration for `n`: `(complexity, min_height, [postfix, …])`
/// listing every canonical shortest expression.
#[pyfunction]
#[pyo3(signature = (n, max_ones = None))]
fn oracle(py: Python<'_>, n: u64, max_ones: Option<u32>) -> PyResult<(u32, u32, Vec<String>)> {
    let r = py
        .detach(|| match max_ones {
            Some(k) => oracle_complexity(n, k),
            None => oracle_default(n),
        })
        .map_err(py_err)?;
    Ok((r.complexity, r.min_height, r.shortest.iter().map(ExprTree::to_postfix).collect()))
}

/// Parse a postfix program over `1 + *` into `(value, ones, height, infix)`.
#[pyfunction]
fn parse_postfix(program: &str) -> PyResult<(u64, u32, u32, String)> {
    let e = ExprTree::from_postfix(program).map_err(py_err)?;
    Ok((e.value(), e.ones(), e.height(), e.to_string()))
}

/// Largest value expressible with `k` ones.
#[pyfunction]
fn e_closed(k: u32) -> PyResult<u128> {
    intcomplexity::e_closed(k).map_err(py_err)
}

#[pymodule]
fn pyintcx(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTable>()?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(parse_postfix, m)?)?;
    m.add_function(wrap_pyfunction!(e_closed, m)?)?;
    Ok(())
}
