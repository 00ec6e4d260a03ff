//! Python module `lattice_screening`.
//!
//! Vectors are tuples of ints, rationals come back as `fractions.Fraction`, and
//! structured results (classifications, pair data, reports) come back as plain
//! dicts built from their JSON form.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyTuple;
use serde::Serialize;

use num_rational::Rational64;
use screening as core;
use screening::decompose::{self, Family};
use screening::{enumerate, pairs, rank2, screeners, LatticeVector};

create_exception!(lattice_screening, LatticeError, PyValueError);

fn err(e: core::Error) -> PyErr {
    LatticeError::new_err(format!("{}: {e}", e.code()))
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn fraction<'py>(py: Python<'py>, r: Rational64) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((*r.numer(), *r.denom()))
}

fn vec_tuple<'py>(py: Python<'py>, v: &LatticeVector) -> PyResult<Bound<'py, PyTuple>> {
    PyTuple::new(py, v.coords())
}

/// A positive definite integral lattice given by its Gram matrix.
#[pyclass(name = "Lattice", module = "lattice_screening", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyLattice(core::Lattice);

#[pymethods]
impl PyLattice {
    #[new]
    fn new(gram: Vec<Vec<i64>>) -> PyResult<Self> {
        core::Lattice::new(gram).map(PyLattice).map_err(err)
    }

    /// Parses a lattice file: JSON with "gram" (and optional "scale") or an integer block.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        core::io::parse_lattice(text).map(PyLattice).map_err(err)
    }

    /// `p` times the Gram matrix of A_n, D_n or E_n.
    #[staticmethod]
    #[pyo3(signature = (family, rank, scale = 1))]
    fn catalog(family: &str, rank: usize, scale: i64) -> PyResult<Self> {
        let f: Family = family.parse().map_err(err)?;
        decompose::catalog(f, rank, scale).map(PyLattice).map_err(err)
    }

    #[getter]
    fn gram(&self) -> Vec<Vec<i64>> {
        self.0.gram().clone()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    #[getter]
    fn determinant(&self) -> i64 {
        self.0.determinant()
    }

    fn is_even(&self) -> bool {
        self.0.is_even()
    }

    fn scaled(&self, p: i64) -> PyResult<Self> {
        self.0.scaled(p).map(PyLattice).map_err(err)
    }

    fn inner(&self, x: Vec<i64>, y: Vec<i64>) -> PyResult<i64> {
        self.0.inner(&LatticeVector::new(x), &LatticeVector::new(y)).map_err(err)
    }

    fn norm(&self, x: Vec<i64>) -> PyResult<i64> {
        let x = LatticeVector::new(x);
        self.0.inner(&x, &x).map_err(err)
    }

    /// Whether `x/k` lies in the dual lattice.
    fn in_dual(&self, x: Vec<i64>, k: i64) -> PyResult<bool> {
        self.0.in_dual(&LatticeVector::new(x), k).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Lattice({:?})", self.0.gram())
    }
}

#[pyfunction]
fn is_screener(lattice: &PyLattice, x: Vec<i64>) -> PyResult<bool> {
    screeners::is_screener(&lattice.0, &LatticeVector::new(x)).map_err(err)
}

/// Canonical screeners as `(vector, norm)` pairs, sorted by norm then coordinates.
#[pyfunction]
fn all_screeners<'py>(py: Python<'py>, lattice: &PyLattice) -> PyResult<Vec<(Bound<'py, PyTuple>, i64)>> {
    screeners::all_screeners(&lattice.0)
        .iter()
        .map(|(v, n)| Ok((vec_tuple(py, v)?, n)))
        .collect()
}

/// Canonical nonzero vectors with norm at most `bound`, as `(vector, norm)` pairs.
#[pyfunction]
fn enumerate_up_to_norm<'py>(py: Python<'py>, lattice: &PyLattice, bound: i64) -> PyResult<Vec<(Bound<'py, PyTuple>, i64)>> {
    enumerate::enumerate_up_to_norm(&lattice.0, bound)
        .iter()
        .map(|(v, n)| Ok((vec_tuple(py, v)?, n)))
        .collect()
}

#[pyfunction]
fn dual_minimum<'py>(py: Python<'py>, lattice: &PyLattice) -> PyResult<Bound<'py, PyAny>> {
    let m = enumerate::dual_minimum(&lattice.0);
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((*m.numer(), *m.denom()))
}

/// Components, extended types and counts as a dict.
#[pyfunction]
fn identify_extended_type<'py>(py: Python<'py>, lattice: &PyLattice) -> PyResult<Bound<'py, PyAny>> {
    let c = decompose::identify_extended_type(&lattice.0).map_err(err)?;
    #[derive(Serialize)]
    struct View<'a> {
        groups: &'a [decompose::ExtendedGroup],
        reduced_basis: &'a [LatticeVector],
        screener_count: usize,
    }
    to_py(
        py,
        &View {
            groups: &c.groups,
            reduced_basis: &c.reduced_basis,
            screener_count: c.screeners.full_count(),
        },
    )
}

#[pyfunction]
fn rank2_check<'py>(py: Python<'py>, lattice: &PyLattice) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &rank2::rank2_check(&lattice.0).map_err(err)?)
}

#[pyfunction]
fn pair_decompositions(lattice: &PyLattice, a: Vec<i64>) -> PyResult<Vec<(i64, i64)>> {
    pairs::pair_decompositions(&lattice.0, &LatticeVector::new(a)).map_err(err)
}

/// Central charge of the type I pair `(e^{-a/p}, e^{a/p'})`.
#[pyfunction]
fn type_i_central_charge<'py>(py: Python<'py>, lattice: &PyLattice, a: Vec<i64>, p: i64, p_prime: i64) -> PyResult<Bound<'py, PyAny>> {
    let spec = pairs::make_type_i(&lattice.0, &LatticeVector::new(a), p, p_prime).map_err(err)?;
    fraction(py, spec.c)
}

#[pyfunction]
#[pyo3(signature = (lattice, a, max_r = 50))]
fn screening_pairs<'py>(py: Python<'py>, lattice: &PyLattice, a: Vec<i64>, max_r: i64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &pairs::screening_pairs(&lattice.0, &LatticeVector::new(a), max_r).map_err(err)?)
}

#[pyfunction]
fn solve_weight_quadratic(p: i64, p_prime: i64, r1: i64, r2: i64) -> Vec<i64> {
    pairs::solve_weight_quadratic(p, p_prime, r1, r2)
}

#[pyfunction]
fn type_iv_search<'py>(py: Python<'py>, p: i64, p_prime: i64, max_r: i64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &pairs::type_iv_search(p, p_prime, max_r))
}

/// Seeded comparison against the brute-force box search, as a dict.
#[pyfunction]
#[pyo3(signature = (seed, cases = 200, max_rank = 4, max_entry = 8))]
fn oracle_check<'py>(py: Python<'py>, seed: u64, cases: usize, max_rank: usize, max_entry: i64) -> PyResult<Bound<'py, PyAny>> {
    let (check, _) = core::oracle::oracle_check(seed, cases, max_rank, max_entry);
    to_py(py, &check)
}

#[pymodule]
fn lattice_screening(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("LatticeError", m.py().get_type::<LatticeError>())?;
    m.add_class::<PyLattice>()?;
    m.add_function(wrap_pyfunction!(is_screener, m)?)?;
    m.add_function(wrap_pyfunction!(all_screeners, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_up_to_norm, m)?)?;
    m.add_function(wrap_pyfunction!(dual_minimum, m)?)?;
    m.add_function(wrap_pyfunction!(identify_extended_type, m)?)?;
    m.add_function(wrap_pyfunction!(rank2_check, m)?)?;
    m.add_function(wrap_pyfunction!(pair_decompositions, m)?)?;
    m.add_function(wrap_pyfunction!(type_i_central_charge, m)?)?;
    m.add_function(wrap_pyfunction!(screening_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(solve_weight_quadratic, m)?)?;
    m.add_function(wrap_pyfunction!(type_iv_search, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_check, m)?)?;
    Ok(())
}
