//! Python bindings: the monoid K_n, monotone sequences, pattern-avoiding
//! boolean matrices, endomorphisms and the counting routines.
//!
//! Words are lists of 1-based generator indices, subsets are lists of
//! 1-based indices, matrices are lists of 0/1 rows.

use kiselman::boolmat;
use kiselman::counting;
use kiselman::monotone;
use kiselman::morphisms;
use kiselman::verify::{self, VerifyConfig};
use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

pyo3::create_exception!(pykiselman, KiselmanError, PyValueError);

fn err(e: kiselman::Error) -> PyErr {
    KiselmanError::new_err(e.to_string())
}

fn subset(n: usize, indices: Vec<usize>) -> PyResult<kiselman::Subset> {
    kiselman::Subset::from_indices(n, indices).map_err(err)
}

/// Kiselman's monoid K_n through its completed rewriting system.
#[pyclass(name = "KiselmanMonoid", module = "pykiselman", frozen)]
struct PyMonoid {
    rs: kiselman::RewriteSystem,
}

impl PyMonoid {
    fn word(&self, letters: Vec<usize>) -> PyResult<kiselman::Word> {
        kiselman::Word::new(self.rs.n(), letters).map_err(err)
    }

    fn element(&self, letters: Vec<usize>) -> PyResult<kiselman::Element> {
        self.rs.reduce(&self.word(letters)?).map_err(err)
    }
}

#[pymethods]
impl PyMonoid {
    #[new]
    #[pyo3(signature = (n, max_rules = kiselman::kiselman::DEFAULT_MAX_RULES))]
    fn new(n: usize, max_rules: usize) -> PyResult<Self> {
        Ok(PyMonoid {
            rs: kiselman::RewriteSystem::completed(n, max_rules).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.rs.n()
    }

    /// `(lhs, rhs)` pairs of the confluent system, sorted by left side.
    fn rules(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        self.rs
            .rules()
            .iter()
            .map(|r| (r.lhs.indices().collect(), r.rhs.indices().collect()))
            .collect()
    }

    fn unresolved_critical_pairs(&self) -> usize {
        self.rs.unresolved_critical_pairs().len()
    }

    fn normal_form(&self, word: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(self.element(word)?.nf().indices().collect())
    }

    fn multiply(&self, a: Vec<usize>, b: Vec<usize>) -> PyResult<Vec<usize>> {
        let p = self
            .rs
            .multiply(&self.element(a)?, &self.element(b)?)
            .map_err(err)?;
        Ok(p.nf().indices().collect())
    }

    fn equal(&self, a: Vec<usize>, b: Vec<usize>) -> PyResult<bool> {
        Ok(self.element(a)? == self.element(b)?)
    }

    fn is_idempotent(&self, word: Vec<usize>) -> PyResult<bool> {
        self.rs.is_idempotent(&self.element(word)?).map_err(err)
    }

    /// `e_X`, the descending product of the generators in `x`.
    fn idempotent(&self, x: Vec<usize>) -> PyResult<Vec<usize>> {
        let e = self.rs.idempotent(subset(self.rs.n(), x)?).map_err(err)?;
        Ok(e.nf().indices().collect())
    }

    fn content(&self, word: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(self.word(word)?.content().to_vec())
    }

    /// Every normal form, in shortlex order.
    #[pyo3(signature = (cap = kiselman::kiselman::DEFAULT_MAX_ELEMENTS))]
    fn elements(&self, py: Python<'_>, cap: usize) -> PyResult<Vec<Vec<usize>>> {
        let all = py.detach(|| self.rs.enumerate_elements(cap)).map_err(err)?;
        Ok(all.iter().map(|e| e.nf().indices().collect()).collect())
    }

    fn tfae_check(&self, x: Vec<usize>, y: Vec<usize>) -> PyResult<(bool, bool, bool)> {
        let n = self.rs.n();
        self.rs
            .tfae_check(subset(n, x)?, subset(n, y)?)
            .map_err(err)
    }

    fn braid_check(&self, x: Vec<usize>, y: Vec<usize>) -> PyResult<(bool, bool)> {
        let n = self.rs.n();
        self.rs
            .braid_check(subset(n, x)?, subset(n, y)?)
            .map_err(err)
    }

    /// The rewriting system as JSON.
    fn to_json(&self) -> String {
        serde_json::to_string(&self.rs).expect("serializable")
    }

    fn __repr__(&self) -> String {
        format!(
            "KiselmanMonoid(n={}, rules={})",
            self.rs.n(),
            self.rs.rules().len()
        )
    }
}

#[pyclass(
    name = "SetSequence",
    module = "pykiselman",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PySetSequence {
    inner: kiselman::SetSequence,
}

#[pymethods]
impl PySetSequence {
    #[new]
    fn new(parts: Vec<Vec<usize>>) -> PyResult<Self> {
        let n = parts.len();
        let parts = parts
            .into_iter()
            .map(|p| subset(n, p))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PySetSequence {
            inner: kiselman::SetSequence::new(parts).map_err(err)?,
        })
    }

    #[staticmethod]
    fn unit(n: usize) -> PyResult<Self> {
        Ok(PySetSequence {
            inner: kiselman::SetSequence::unit(n).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn parts(&self) -> Vec<Vec<usize>> {
        self.inner.parts().iter().map(|p| p.to_vec()).collect()
    }

    fn is_monotone(&self) -> bool {
        self.inner.is_monotone()
    }

    fn star(&self, other: &PySetSequence) -> PyResult<PySetSequence> {
        Ok(PySetSequence {
            inner: self.inner.star(&other.inner).map_err(err)?,
        })
    }

    fn __mul__(&self, other: &PySetSequence) -> PyResult<PySetSequence> {
        self.star(other)
    }

    fn __repr__(&self) -> String {
        format!("SetSequence({})", self.inner)
    }
}

#[pyclass(
    name = "BoolMatrix",
    module = "pykiselman",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyBoolMatrix {
    inner: kiselman::BoolMatrix,
}

#[pymethods]
impl PyBoolMatrix {
    #[new]
    fn new(rows: Vec<Vec<u8>>) -> PyResult<Self> {
        Ok(PyBoolMatrix {
            inner: kiselman::BoolMatrix::from_rows(&rows).map_err(err)?,
        })
    }

    #[staticmethod]
    fn identity(n: usize) -> PyResult<Self> {
        Ok(PyBoolMatrix {
            inner: kiselman::BoolMatrix::identity(n).map_err(err)?,
        })
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        (self.inner.rows(), self.inner.cols())
    }

    fn rows(&self) -> Vec<Vec<u32>> {
        // Vec<u8> would surface in Python as bytes.
        self.inner
            .to_nested()
            .into_iter()
            .map(|r| r.into_iter().map(u32::from).collect())
            .collect()
    }

    fn avoids_pattern(&self) -> bool {
        self.inner.avoids_pattern()
    }

    fn transpose(&self) -> PyBoolMatrix {
        PyBoolMatrix {
            inner: self.inner.transpose(),
        }
    }

    fn __matmul__(&self, other: &PyBoolMatrix) -> PyResult<PyBoolMatrix> {
        Ok(PyBoolMatrix {
            inner: self.inner.mul(&other.inner).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("BoolMatrix({})", self.inner)
    }
}

#[pyclass(
    name = "Endomorphism",
    module = "pykiselman",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyEndomorphism {
    inner: kiselman::Endomorphism,
}

#[pymethods]
impl PyEndomorphism {
    /// The endomorphism sending `a_i` to `e_{X_i}`.
    #[staticmethod]
    fn from_sequence(s: &PySetSequence) -> PyResult<Self> {
        Ok(PyEndomorphism {
            inner: kiselman::Endomorphism::from_sequence(&s.inner).map_err(err)?,
        })
    }

    #[staticmethod]
    fn identity(n: usize) -> PyResult<Self> {
        Ok(PyEndomorphism {
            inner: kiselman::Endomorphism::identity(n).map_err(err)?,
        })
    }

    /// Contents of the generator images.
    fn images(&self) -> Vec<Vec<usize>> {
        self.inner.images().iter().map(|x| x.to_vec()).collect()
    }

    fn phi(&self) -> PySetSequence {
        PySetSequence {
            inner: self.inner.phi(),
        }
    }

    fn to_matrix(&self) -> PyBoolMatrix {
        PyBoolMatrix {
            inner: self.inner.to_matrix(),
        }
    }

    /// `self ∘ f`.
    fn compose(&self, f: &PyEndomorphism) -> PyResult<PyEndomorphism> {
        Ok(PyEndomorphism {
            inner: self.inner.compose(&f.inner).map_err(err)?,
        })
    }

    fn apply(&self, monoid: &PyMonoid, word: Vec<usize>) -> PyResult<Vec<usize>> {
        let w = monoid.word(word)?;
        Ok(self
            .inner
            .apply(&monoid.rs, &w)
            .map_err(err)?
            .nf()
            .indices()
            .collect())
    }

    fn __repr__(&self) -> String {
        format!("Endomorphism({})", self.inner)
    }
}

#[pyfunction]
fn monotone_sequences(n: usize) -> PyResult<Vec<PySetSequence>> {
    let all = monotone::enumerate(n, monotone::DEFAULT_ENUMERATION_GUARD).map_err(err)?;
    Ok(all
        .into_iter()
        .map(|inner| PySetSequence { inner })
        .collect())
}

#[pyfunction]
fn dn_matrices(py: Python<'_>, n: usize) -> PyResult<Vec<PyBoolMatrix>> {
    let all = py
        .detach(|| boolmat::enumerate_dn(n, boolmat::DEFAULT_ENUMERATION_GUARD))
        .map_err(err)?;
    Ok(all
        .into_iter()
        .map(|inner| PyBoolMatrix { inner })
        .collect())
}

#[pyfunction]
fn count_dn(py: Python<'_>, n: usize) -> PyResult<u64> {
    py.detach(|| boolmat::count_dn(n, boolmat::DEFAULT_ENUMERATION_GUARD))
        .map_err(err)
}

#[pyfunction]
fn find_units(n: usize) -> PyResult<Vec<PyBoolMatrix>> {
    let units = boolmat::find_units(n, boolmat::DEFAULT_ENUMERATION_GUARD).map_err(err)?;
    Ok(units
        .into_iter()
        .map(|inner| PyBoolMatrix { inner })
        .collect())
}

/// End(K_n) by checking every generator assignment against the relations.
#[pyfunction]
fn brute_force_endomorphisms(py: Python<'_>, monoid: &PyMonoid) -> PyResult<Vec<PyEndomorphism>> {
    let all = py
        .detach(|| {
            morphisms::brute_force_enumerate_end(&monoid.rs, morphisms::DEFAULT_BRUTE_FORCE_GUARD)
        })
        .map_err(err)?;
    Ok(all
        .into_iter()
        .map(|inner| PyEndomorphism { inner })
        .collect())
}

#[pyfunction]
fn psi(s: &PySetSequence) -> PyResult<PyBoolMatrix> {
    Ok(PyBoolMatrix {
        inner: morphisms::psi(&s.inner).map_err(err)?,
    })
}

#[pyfunction]
fn psi_inv(m: &PyBoolMatrix) -> PyResult<PySetSequence> {
    Ok(PySetSequence {
        inner: morphisms::psi_inv(&m.inner).map_err(err)?,
    })
}

#[pyfunction]
fn closed_count(m: usize, n: usize) -> PyResult<BigUint> {
    Ok(counting::closed_count(m, n).map_err(err)?.value)
}

#[pyfunction]
#[pyo3(signature = (m, n, guard_bits = counting::DEFAULT_GUARD_BITS))]
fn brute_count(py: Python<'_>, m: usize, n: usize, guard_bits: usize) -> PyResult<BigUint> {
    Ok(py
        .detach(|| counting::brute_count(m, n, guard_bits))
        .map_err(err)?
        .value)
}

/// Runs the property suites up to rank `n` and returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (n = 3, suites = None))]
fn verify_report(py: Python<'_>, n: usize, suites: Option<Vec<String>>) -> PyResult<String> {
    let suites = match suites {
        None => kiselman::Suite::ALL.to_vec(),
        Some(names) => names
            .iter()
            .map(|s| s.parse::<kiselman::Suite>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(KiselmanError::new_err)?,
    };
    let cfg = VerifyConfig {
        max_rank: n,
        ..VerifyConfig::default()
    };
    let mut report = py.detach(|| verify::run(&suites, &cfg)).map_err(err)?;
    report.clear_timing();
    Ok(serde_json::to_string(&report).expect("serializable"))
}

#[pymodule]
pub fn pykiselman(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("KiselmanError", m.py().get_type::<KiselmanError>())?;
    m.add_class::<PyMonoid>()?;
    m.add_class::<PySetSequence>()?;
    m.add_class::<PyBoolMatrix>()?;
    m.add_class::<PyEndomorphism>()?;
    m.add_function(wrap_pyfunction!(monotone_sequences, m)?)?;
    m.add_function(wrap_pyfunction!(dn_matrices, m)?)?;
    m.add_function(wrap_pyfunction!(count_dn, m)?)?;
    m.add_function(wrap_pyfunction!(find_units, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_endomorphisms, m)?)?;
    m.add_function(wrap_pyfunction!(psi, m)?)?;
    m.add_function(wrap_pyfunction!(psi_inv, m)?)?;
    m.add_function(wrap_pyfunction!(closed_count, m)?)?;
    m.add_function(wrap_pyfunction!(brute_count, m)?)?;
    m.add_function(wrap_pyfunction!(verify_report, m)?)?;
    Ok(())
}
