//! Python bindings for `elemsym`.
//!
//! Rings, elements, matrices, ideals and words are wrapped as classes; the command-level
//! operations take and return JSON strings in the same format as the `elemsym` binary.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use serde_json::Value as Json;

use elemsym::decompose::decompose_conjugate;
use elemsym::matrix::{is_alternating, is_symplectic, pfaffian, standard_symplectic_form};
use elemsym::ring::{poly, zmod};
use elemsym::rewrite::{rewrite_conjugation_linear, rewrite_conjugation_symplectic};
use elemsym::verify::{run_suite, SUITES};
use elemsym::{
    certify, CertifiedElement, Error, ExactMatrix, IdealPresentation, Letter, Ring, RingDescriptor, RingElement,
    Word,
};

create_exception!(elemsym_py, VerificationError, PyException);

fn err(e: Error) -> PyErr {
    match e {
        Error::VerificationFailed(_) => VerificationError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn parse(text: &str) -> PyResult<Json> {
    serde_json::from_str(text).map_err(|e| PyValueError::new_err(format!("JSON: {e}")))
}

#[pyclass(name = "Ring", frozen, skip_from_py_object, module = "elemsym_py")]
#[derive(Clone)]
struct PyRing {
    inner: Ring,
}

#[pymethods]
impl PyRing {
    #[staticmethod]
    fn zmod(m: u64) -> PyResult<Self> {
        Ok(PyRing { inner: zmod(m).map_err(err)? })
    }

    #[staticmethod]
    fn poly(base: &PyRing, vars: Vec<String>) -> PyResult<Self> {
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        Ok(PyRing { inner: poly(&base.inner, &names).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyRing { inner: RingDescriptor::from_json(&parse(text)?).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    /// An element from an integer or its JSON encoding.
    fn element(&self, value: &Bound<'_, PyAny>) -> PyResult<PyElement> {
        let inner = if let Ok(k) = value.extract::<i64>() {
            RingElement::int(&self.inner, k)
        } else {
            let text: String = value.extract()?;
            RingElement::from_json(&self.inner, &parse(&text)?).map_err(err)?
        };
        Ok(PyElement { inner })
    }

    fn var(&self, name: &str) -> PyResult<PyElement> {
        Ok(PyElement { inner: RingElement::var(&self.inner, name).map_err(err)? })
    }

    fn __eq__(&self, other: &PyRing) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Ring({})", self.to_json())
    }
}

#[pyclass(name = "Element", frozen, from_py_object, module = "elemsym_py")]
#[derive(Clone)]
struct PyElement {
    inner: RingElement,
}

impl PyElement {
    fn checked(&self, o: &PyElement) -> PyResult<()> {
        if self.inner.ring != o.inner.ring {
            return Err(err(Error::DescriptorMismatch));
        }
        Ok(())
    }
}

#[pymethods]
impl PyElement {
    #[getter]
    fn ring(&self) -> PyRing {
        PyRing { inner: self.inner.ring.clone() }
    }

    fn __add__(&self, o: &PyElement) -> PyResult<PyElement> {
        self.checked(o)?;
        Ok(PyElement { inner: self.inner.add(&o.inner) })
    }

    fn __sub__(&self, o: &PyElement) -> PyResult<PyElement> {
        self.checked(o)?;
        Ok(PyElement { inner: self.inner.sub(&o.inner) })
    }

    fn __mul__(&self, o: &PyElement) -> PyResult<PyElement> {
        self.checked(o)?;
        Ok(PyElement { inner: self.inner.mul(&o.inner) })
    }

    fn __neg__(&self) -> PyElement {
        PyElement { inner: self.inner.neg() }
    }

    fn __pow__(&self, e: u32, _modulo: Option<u32>) -> PyElement {
        PyElement { inner: self.inner.pow(e) }
    }

    fn __eq__(&self, o: &PyElement) -> bool {
        self.inner == o.inner
    }

    fn inverse(&self) -> PyResult<PyElement> {
        Ok(PyElement { inner: elemsym::invert_unit(&self.inner).map_err(err)? })
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_one(&self) -> bool {
        self.inner.is_one()
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element({})", self.inner)
    }
}

#[pyclass(name = "Matrix", frozen, skip_from_py_object, module = "elemsym_py")]
#[derive(Clone)]
struct PyMatrix {
    inner: ExactMatrix,
}

#[pymethods]
impl PyMatrix {
    #[staticmethod]
    fn from_json(ring: &PyRing, text: &str) -> PyResult<Self> {
        Ok(PyMatrix { inner: ExactMatrix::from_json(&ring.inner, &parse(text)?).map_err(err)? })
    }

    #[staticmethod]
    fn identity(ring: &PyRing, n: usize) -> Self {
        PyMatrix { inner: ExactMatrix::identity(&ring.inner, n) }
    }

    /// The standard symplectic form `ψ_n` of size `2n`.
    #[staticmethod]
    fn standard_form(ring: &PyRing, n: usize) -> Self {
        PyMatrix { inner: standard_symplectic_form(&ring.inner, n) }
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        (self.inner.rows, self.inner.cols)
    }

    fn get(&self, r: usize, c: usize) -> PyResult<PyElement> {
        if r >= self.inner.rows || c >= self.inner.cols {
            return Err(PyValueError::new_err(format!("index ({r}, {c}) out of range")));
        }
        Ok(PyElement { inner: self.inner.get(r, c).clone() })
    }

    fn __matmul__(&self, o: &PyMatrix) -> PyResult<PyMatrix> {
        Ok(PyMatrix { inner: self.inner.try_mul(&o.inner).map_err(err)? })
    }

    fn __eq__(&self, o: &PyMatrix) -> bool {
        self.inner == o.inner
    }

    fn transpose(&self) -> PyMatrix {
        PyMatrix { inner: self.inner.transpose() }
    }

    fn inverse(&self) -> PyResult<PyMatrix> {
        Ok(PyMatrix { inner: self.inner.inverse().map_err(err)? })
    }

    fn det(&self) -> PyResult<PyElement> {
        Ok(PyElement { inner: self.inner.det().map_err(err)? })
    }

    fn pfaffian(&self) -> PyResult<PyElement> {
        Ok(PyElement { inner: pfaffian(&self.inner).map_err(err)? })
    }

    fn is_identity(&self) -> bool {
        self.inner.is_identity()
    }

    fn is_symplectic(&self) -> PyResult<bool> {
        is_symplectic(&self.inner).map_err(err)
    }

    fn is_alternating(&self) -> bool {
        is_alternating(&self.inner)
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn __repr__(&self) -> String {
        format!("Matrix({})", self.to_json())
    }
}

#[pyclass(name = "Ideal", frozen, skip_from_py_object, module = "elemsym_py")]
#[derive(Clone)]
struct PyIdeal {
    inner: IdealPresentation,
}

#[pymethods]
impl PyIdeal {
    #[new]
    fn new(ring: &PyRing, generators: Vec<PyElement>) -> PyResult<Self> {
        let gens = generators.into_iter().map(|g| g.inner).collect();
        Ok(PyIdeal { inner: IdealPresentation::new(&ring.inner, gens).map_err(err)? })
    }

    #[getter]
    fn ring(&self) -> PyRing {
        PyRing { inner: self.inner.ring.clone() }
    }

    #[getter]
    fn generators(&self) -> Vec<PyElement> {
        self.inner.generators.iter().map(|g| PyElement { inner: g.clone() }).collect()
    }

    /// The same generators viewed in a polynomial ring over this ideal's ring.
    fn extend(&self, ring: &PyRing) -> PyResult<PyIdeal> {
        Ok(PyIdeal { inner: self.inner.extend(&ring.inner).map_err(err)? })
    }

    /// The presentation of `I²` by pairwise products of generators.
    fn square(&self) -> PyIdeal {
        PyIdeal { inner: self.inner.square() }
    }

    fn certify(&self, coefficients: Vec<PyElement>) -> PyResult<PyCertified> {
        let c = coefficients.into_iter().map(|g| g.inner).collect();
        Ok(PyCertified { inner: certify(&self.inner, c).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }
}

#[pyclass(name = "Certified", frozen, skip_from_py_object, module = "elemsym_py")]
#[derive(Clone)]
struct PyCertified {
    inner: CertifiedElement,
}

#[pymethods]
impl PyCertified {
    #[getter]
    fn value(&self) -> PyElement {
        PyElement { inner: self.inner.value.clone() }
    }

    #[getter]
    fn coefficients(&self) -> Vec<PyElement> {
        self.inner.coefficients.iter().map(|g| PyElement { inner: g.clone() }).collect()
    }

    fn is_valid(&self) -> bool {
        self.inner.is_valid()
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }
}

#[pyclass(name = "Word", skip_from_py_object, module = "elemsym_py")]
#[derive(Clone)]
struct PyWord {
    inner: Word,
}

#[pymethods]
impl PyWord {
    #[new]
    fn new(ring: &PyRing, size: usize) -> Self {
        PyWord { inner: Word::new(&ring.inner, size) }
    }

    #[staticmethod]
    #[pyo3(signature = (ring, size, text, ideal = None))]
    fn from_json(ring: &PyRing, size: usize, text: &str, ideal: Option<&PyIdeal>) -> PyResult<Self> {
        let w = Word::from_json(&ring.inner, size, ideal.map(|i| &i.inner), &parse(text)?).map_err(err)?;
        Ok(PyWord { inner: w })
    }

    /// Appends `E_ij(x)`.
    fn e(&mut self, i: usize, j: usize, x: &PyElement) {
        self.inner.push(Letter::e(i, j, x.inner.clone()));
    }

    /// Appends `se_ij(x)`.
    fn se(&mut self, i: usize, j: usize, x: &PyElement) {
        self.inner.push(Letter::se(i, j, x.inner.clone()));
    }

    /// Appends `E_ij(x)` carrying the certificate of `x`.
    fn e_cert(&mut self, i: usize, j: usize, x: &PyCertified) {
        self.inner.push(Letter::e_cert(i, j, x.inner.clone()));
    }

    /// Appends `se_ij(x)` carrying the certificate of `x`.
    fn se_cert(&mut self, i: usize, j: usize, x: &PyCertified) {
        self.inner.push(Letter::se_cert(i, j, x.inner.clone()));
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn evaluate(&self) -> PyResult<PyMatrix> {
        Ok(PyMatrix { inner: self.inner.evaluate().map_err(err)? })
    }

    fn inverse(&self) -> PyWord {
        PyWord { inner: self.inner.inverse() }
    }

    fn __mul__(&self, o: &PyWord) -> PyWord {
        PyWord { inner: self.inner.concat(&o.inner) }
    }

    fn all_certified_in(&self, ideal: &PyIdeal) -> bool {
        self.inner.all_certified_in(&ideal.inner)
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word(size={}, {})", self.inner.size, self.to_json())
    }
}

/// `g se_ij(ab) g^-1` as a word of `I`-certified symplectic generators; returns `(word, trace)`.
#[pyfunction]
fn decompose(g: &PyWord, i: usize, j: usize, a: &PyCertified, b: &PyCertified) -> PyResult<(PyWord, Vec<String>)> {
    let res = decompose_conjugate(&g.inner, i, j, &a.inner, &b.inner).map_err(err)?;
    let trace = res.lemma_trace.iter().map(|t| format!("{}: {}", t.step, t.detail)).collect();
    Ok((PyWord { inner: res.output }, trace))
}

/// Rewrites `ε X_ij(Y^(4^r) a) ε^-1`; `mode` is "linear" or "symplectic". Returns `(lhs, output, trace)`.
#[pyfunction]
fn rewrite(mode: &str, eps: &PyWord, i: usize, j: usize, a: &PyCertified) -> PyResult<(PyWord, PyWord, Vec<String>)> {
    let res = match mode {
        "linear" => rewrite_conjugation_linear(&eps.inner, i, j, &a.inner),
        "symplectic" => rewrite_conjugation_symplectic(&eps.inner, i, j, &a.inner),
        other => return Err(PyValueError::new_err(format!("unknown mode {other}"))),
    }
    .map_err(err)?;
    Ok((PyWord { inner: res.lhs }, PyWord { inner: res.output }, res.case_trace))
}

/// Runs a command (`decompose`, `rewrite`, `pfaffian`, `standardize`, `expand`) on a JSON
/// document and returns the result document as JSON.
#[pyfunction]
fn run(command: &str, text: &str) -> PyResult<String> {
    let (doc, _) = elemsym::api::run(command, &parse(text)?).map_err(err)?;
    Ok(doc.to_string())
}

/// Runs a randomized verification suite; returns its JSON report.
#[pyfunction]
#[pyo3(signature = (suite, trials = 100, seed = 0))]
fn verify(suite: &str, trials: usize, seed: u64) -> PyResult<String> {
    Ok(run_suite(suite, trials, seed).map_err(err)?.to_json().to_string())
}

#[pyfunction]
fn suites() -> Vec<&'static str> {
    SUITES.to_vec()
}

#[pymodule]
fn elemsym_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRing>()?;
    m.add_class::<PyElement>()?;
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyIdeal>()?;
    m.add_class::<PyCertified>()?;
    m.add_class::<PyWord>()?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(rewrite, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(suites, m)?)?;
    m.add("VerificationError", m.py().get_type::<VerificationError>())?;
    Ok(())
}
