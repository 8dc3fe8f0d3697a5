//! Python module `concord`: Seifert-matrix invariants, verdicts, metabolizer
//! enumeration and proof replay.

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use concord_core::algebra::{poly_resultant, smith_normal_form as snf, IntMatrix, IntPolynomial};
use concord_core::classifier::{
    classify_quadratic as classify, full_verdict, twisted_double_verdict,
};
use concord_core::knot::{
    alexander_polynomial, double_cover_homology, two_bridge as make_two_bridge,
};
use concord_core::metabolizer::{self, MetabolizerNormalForm};
use concord_core::number_theory::factorize_big;
use concord_core::{replay as replay_engine, SeifertMatrix};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

/// Serializes through JSON so Python receives plain dicts and lists.
fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(runtime_err)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn matrix(rows: Vec<Vec<BigInt>>) -> PyResult<IntMatrix> {
    IntMatrix::from_rows(rows).map_err(value_err)
}

fn rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.to_rows()
}

/// A Seifert matrix; `rows` is a square list of integer lists.
#[pyclass(name = "Seifert", frozen)]
struct PySeifert {
    inner: SeifertMatrix,
}

#[pymethods]
impl PySeifert {
    #[new]
    fn new(rows: Vec<Vec<BigInt>>) -> PyResult<Self> {
        SeifertMatrix::from_rows(rows)
            .map(|inner| Self { inner })
            .map_err(value_err)
    }

    #[getter]
    fn genus(&self) -> usize {
        self.inner.genus()
    }

    fn rows(&self) -> Vec<Vec<BigInt>> {
        rows(self.inner.matrix())
    }

    /// Coefficients of Δ(t), constant term first.
    fn alexander_polynomial(&self) -> Vec<BigInt> {
        alexander_polynomial(&self.inner).coefficients().to_vec()
    }

    /// Invariant factors of the double branched cover's first homology.
    fn homology(&self) -> Vec<BigInt> {
        double_cover_homology(&self.inner)
            .invariant_factors()
            .to_vec()
    }

    fn primary_decomposition(&self) -> String {
        double_cover_homology(&self.inner).primary_string()
    }

    fn verdict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &full_verdict(&self.inner).map_err(runtime_err)?)
    }

    fn __repr__(&self) -> String {
        format!("Seifert({})", self.inner.matrix())
    }
}

/// Diagonal linking form `Σ εᵢ xᵢ yᵢ / pⁿ` on `(Z_{pⁿ})^d`.
#[pyclass(name = "PrimaryForm", frozen)]
struct PyPrimaryForm {
    inner: metabolizer::PrimaryForm,
}

#[pymethods]
impl PyPrimaryForm {
    /// `eps` defaults to the alternating coefficients `1, -1, ...` of length `d`.
    #[new]
    #[pyo3(signature = (p, n, eps=None, d=None))]
    fn new(p: u64, n: u32, eps: Option<Vec<i64>>, d: Option<usize>) -> PyResult<Self> {
        let inner = match (eps, d) {
            (Some(eps), _) => metabolizer::PrimaryForm::new(p, n, &eps),
            (None, Some(d)) => metabolizer::PrimaryForm::alternating(p, n, d),
            (None, None) => return Err(PyValueError::new_err("give eps or d")),
        }
        .map_err(value_err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.d()
    }

    #[getter]
    fn eps(&self) -> Vec<u64> {
        self.inner.eps().to_vec()
    }

    /// Numerator of `β(x, y)` over `pⁿ`.
    fn pair(&self, x: Vec<u64>, y: Vec<u64>) -> PyResult<u64> {
        if x.len() != self.inner.d() || y.len() != self.inner.d() {
            return Err(PyValueError::new_err("vectors must have length d"));
        }
        let m = self.inner.modulus();
        let (x, y): (Vec<u64>, Vec<u64>) = (
            x.iter().map(|v| v % m).collect(),
            y.iter().map(|v| v % m).collect(),
        );
        Ok(self.inner.pair(&x, &y))
    }

    /// Every metabolizer in canonical normal form.
    #[pyo3(signature = (budget_override=false))]
    fn metabolizers(&self, budget_override: bool) -> PyResult<Vec<PyMetabolizer>> {
        let opts = metabolizer::EnumerationOptions {
            budget_override,
            ..Default::default()
        };
        let run = metabolizer::enumerate_with(&self.inner, &opts).map_err(value_err)?;
        Ok(run
            .metabolizers
            .into_iter()
            .map(|inner| PyMetabolizer { inner })
            .collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "PrimaryForm(p={}, n={}, eps={:?})",
            self.inner.p(),
            self.inner.n(),
            self.inner.eps()
        )
    }
}

/// Subgroup of `(Z_{pⁿ})^d` in canonical normal form.
#[pyclass(name = "Metabolizer", frozen)]
struct PyMetabolizer {
    inner: MetabolizerNormalForm,
}

#[pymethods]
impl PyMetabolizer {
    #[staticmethod]
    fn from_generators(p: u64, n: u32, d: usize, generators: Vec<Vec<u64>>) -> PyResult<Self> {
        metabolizer::normal_form(p, n, d, &generators)
            .map(|inner| Self { inner })
            .map_err(value_err)
    }

    #[getter]
    fn rows(&self) -> Vec<Vec<u64>> {
        self.inner.rows().to_vec()
    }

    #[getter]
    fn profile(&self) -> Vec<usize> {
        self.inner.profile()
    }

    #[getter]
    fn id(&self) -> String {
        self.inner.id()
    }

    fn contains(&self, x: Vec<u64>) -> bool {
        x.len() == self.inner.d() && self.inner.contains(&x)
    }

    fn verify_structure<'py>(
        &self,
        py: Python<'py>,
        form: &PyPrimaryForm,
    ) -> PyResult<Bound<'py, PyAny>> {
        to_py(
            py,
            &metabolizer::verify_structure(&self.inner, &form.inner).map_err(value_err)?,
        )
    }

    fn replay<'py>(&self, py: Python<'py>, form: &PyPrimaryForm) -> PyResult<Bound<'py, PyAny>> {
        match replay_engine(&form.inner, &self.inner) {
            Ok(cert) => to_py(py, &cert),
            Err(e @ concord_core::replay::ReplayError::Precondition(_)) => Err(value_err(e)),
            Err(e) => Err(runtime_err(e)),
        }
    }

    fn __repr__(&self) -> String {
        format!("Metabolizer({})", self.inner)
    }
}

/// `(D, U, W)` with `U·M·W = D`.
#[pyfunction]
fn smith_normal_form(
    m: Vec<Vec<BigInt>>,
) -> PyResult<(Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>)> {
    let r = snf(&matrix(m)?);
    Ok((rows(&r.d), rows(&r.u), rows(&r.w)))
}

/// Resultant of two polynomials given by coefficients, constant term first.
#[pyfunction]
fn resultant(f: Vec<BigInt>, g: Vec<BigInt>) -> PyResult<BigInt> {
    poly_resultant(&IntPolynomial::new(f), &IntPolynomial::new(g)).map_err(value_err)
}

/// `[(prime, exponent), ...]` for `|n|`.
#[pyfunction]
fn factorize(n: BigInt) -> PyResult<Vec<(u64, u32)>> {
    Ok(factorize_big(&n).map_err(value_err)?.factors().to_vec())
}

/// Algebraic concordance order of a quadratic Alexander polynomial.
#[pyfunction]
fn classify_quadratic<'py>(py: Python<'py>, coeffs: Vec<BigInt>) -> PyResult<Bound<'py, PyAny>> {
    to_py(
        py,
        &classify(&IntPolynomial::new(coeffs)).map_err(value_err)?,
    )
}

/// Clause and verdict for the a-twisted double of the unknot.
#[pyfunction]
fn twisted_double<'py>(py: Python<'py>, a: BigInt) -> PyResult<Bound<'py, PyAny>> {
    let (clause, verdict) = twisted_double_verdict(&a).map_err(runtime_err)?;
    to_py(
        py,
        &serde_json::json!({ "clause": clause, "description": clause.describe(), "verdict": verdict }),
    )
}

/// Cover homology and linking form of the two-bridge knot `K(p, q)`.
#[pyfunction]
fn two_bridge<'py>(py: Python<'py>, p: BigInt, q: BigInt) -> PyResult<Bound<'py, PyAny>> {
    let knot = make_two_bridge(p.clone(), q).map_err(value_err)?;
    let witness = concord_core::classifier::two_bridge_obstruction(&p).map_err(value_err)?;
    to_py(py, &serde_json::json!({ "knot": knot, "witness": witness }))
}

#[pymodule]
fn concord(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PySeifert>()?;
    m.add_class::<PyPrimaryForm>()?;
    m.add_class::<PyMetabolizer>()?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(resultant, m)?)?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    m.add_function(wrap_pyfunction!(classify_quadratic, m)?)?;
    m.add_function(wrap_pyfunction!(twisted_double, m)?)?;
    m.add_function(wrap_pyfunction!(two_bridge, m)?)?;
    Ok(())
}
