use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use periodica_core::action::{check_adem_coherence, ActionTable};
use periodica_core::fp::Prime;
use periodica_core::parse::{parse_element, parse_polynomial};
use periodica_core::periodicity::{is_periodicity_element, periodicity_report, SearchConfig};
use periodica_core::report::ReportDocument;
use periodica_core::ring::{RingBasis, RingElement};
use periodica_core::ringfile::load_ring;
use periodica_core::steenrod::algebra;
use periodica_core::verify::{conditional_relation_audit, ConditionalShape, Verifier, VerifyOptions};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn prime(p: u32) -> PyResult<Prime> {
    Prime::new(p).map_err(err)
}

/// Admissible normal form of a Steenrod expression such as "Sq^2 Sq^2".
#[pyfunction]
#[pyo3(signature = (expr, p = 2))]
fn normalize(expr: &str, p: u32) -> PyResult<String> {
    let p = prime(p)?;
    let e = parse_element(expr, p).map_err(err)?;
    Ok(algebra(p).normalize(&e).to_string())
}

/// Admissible monomials of one degree.
#[pyfunction]
#[pyo3(signature = (degree, p = 2))]
fn admissible_basis(degree: u32, p: u32) -> PyResult<Vec<String>> {
    let p = prime(p)?;
    Ok(algebra(p).admissible_basis(degree).monomials.iter().map(|m| m.to_string()).collect())
}

/// Excess of a single monomial.
#[pyfunction]
#[pyo3(signature = (monomial, p = 2))]
fn excess(monomial: &str, p: u32) -> PyResult<u32> {
    let p = prime(p)?;
    let e = parse_element(monomial, p).map_err(err)?;
    let m = e.as_monomial().ok_or_else(|| err("expected a single monomial"))?;
    m.excess().map_err(err)
}

#[pyfunction]
fn is_indecomposable(k: u32) -> PyResult<bool> {
    algebra(Prime::TWO).is_indecomposable(k).map_err(err)
}

/// A decomposition of `Sq^k` through lower squares; fails for powers of two.
#[pyfunction]
fn decompose_power(k: u32) -> PyResult<String> {
    Ok(algebra(Prime::TWO).decompose_power(k).map_err(err)?.to_string())
}

/// Run a named verifier and return the JSON report.
#[pyfunction]
#[pyo3(signature = (id, k = None, k_max = None, p = None, lam = None, a = None, cap = None))]
fn verify(
    id: &str,
    k: Option<u32>,
    k_max: Option<u32>,
    p: Option<u32>,
    lam: Option<u32>,
    a: Option<u32>,
    cap: Option<u32>,
) -> PyResult<String> {
    let opts = VerifyOptions {
        k,
        k_max,
        p,
        lambda: lam,
        a,
        cap,
        ..VerifyOptions::default()
    };
    let reports = Verifier::new().run(id, &opts).map_err(err)?;
    Ok(ReportDocument::new("verification", reports).to_json())
}

/// A graded ring with a Steenrod action, loaded from ring-file text.
#[pyclass(frozen)]
struct Ring {
    basis: Arc<RingBasis>,
    table: ActionTable,
}

impl Ring {
    fn element(&self, src: &str) -> PyResult<RingElement> {
        let poly = parse_polynomial(src, self.basis.presentation()).map_err(err)?;
        self.basis.polynomial(&poly).map_err(err)
    }
}

#[pymethods]
impl Ring {
    #[new]
    fn new(text: &str) -> PyResult<Ring> {
        let loaded = load_ring(text).map_err(err)?;
        Ok(Ring {
            basis: loaded.basis,
            table: loaded.table,
        })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Ring> {
        let text = std::fs::read_to_string(path).map_err(err)?;
        Ring::new(&text)
    }

    #[getter]
    fn prime(&self) -> u32 {
        self.basis.prime().value()
    }

    #[getter]
    fn cap(&self) -> u32 {
        self.basis.cap()
    }

    fn dim(&self, degree: u32) -> usize {
        self.basis.dim(degree)
    }

    fn basis(&self, degree: u32) -> Vec<String> {
        self.basis.basis_elements(degree).iter().map(|e| self.basis.format(e)).collect()
    }

    fn multiply(&self, a: &str, b: &str) -> PyResult<String> {
        let prod = self.basis.multiply(&self.element(a)?, &self.element(b)?).map_err(err)?;
        Ok(self.basis.format(&prod))
    }

    /// Apply a Steenrod expression to a class.
    fn act(&self, expr: &str, element: &str) -> PyResult<String> {
        let op = parse_element(expr, self.basis.prime()).map_err(err)?;
        let out = self.table.act(&op, &self.element(element)?).map_err(err)?;
        Ok(self.basis.format(&out))
    }

    fn is_periodic(&self, element: &str) -> PyResult<bool> {
        is_periodicity_element(&self.basis, &self.element(element)?).map_err(err)
    }

    #[pyo3(signature = (minimal = false))]
    fn periodicity(&self, minimal: bool) -> PyResult<String> {
        let r = periodicity_report(&self.basis, Some(&self.table), minimal, &SearchConfig::default()).map_err(err)?;
        Ok(ReportDocument::new("periodicity", r).to_json())
    }

    #[pyo3(signature = (limit = None))]
    fn coherence(&self, limit: Option<u32>) -> PyResult<String> {
        let r = check_adem_coherence(&self.table, limit.unwrap_or(self.basis.cap())).map_err(err)?;
        Ok(ReportDocument::new("coherence", r).to_json())
    }

    fn audit(&self, shape: &str, element: &str) -> PyResult<String> {
        let shape: ConditionalShape = shape.parse().map_err(err)?;
        let r = conditional_relation_audit(&self.table, &self.element(element)?, shape).map_err(err)?;
        Ok(ReportDocument::new("verification", vec![r]).to_json())
    }
}

#[pymodule]
fn periodica(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(admissible_basis, m)?)?;
    m.add_function(wrap_pyfunction!(excess, m)?)?;
    m.add_function(wrap_pyfunction!(is_indecomposable, m)?)?;
    m.add_function(wrap_pyfunction!(decompose_power, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_class::<Ring>()?;
    Ok(())
}
