//! Python bindings. Integers cross as Python `int`, exact rationals as
//! `fractions.Fraction`, vectors and matrices as lists.

use dsfaces::bases::{self, fbar_fdown_corrected, BasisKind, Table1Row, VectorKind};
use dsfaces::enumeration::{self, EnumOptions, ParityClass};
use dsfaces::faces::{self, Face};
use dsfaces::linalg::{build_matrix, char_poly};
use dsfaces::polytopes::{self, PolytopeHandle, PolytopeLabel};
use dsfaces::projectors::{self, rank1_projector_entry_corrected, ProjectorMatrix};
use dsfaces::verify::{Formulas, Suite};
use dsfaces::{spaces, Error, ExactMatrix, IntVector, MatrixName};
use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn err(e: Error) -> PyErr {
    match e {
        Error::ScanTooLarge { .. } | Error::Overflow(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse<T: std::str::FromStr>(s: &str) -> PyResult<T>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e: T::Err| PyValueError::new_err(e.to_string()))
}

fn rows(mat: &ExactMatrix) -> Vec<Vec<BigRational>> {
    mat.row_vectors()
}

fn ints(v: IntVector) -> Vec<BigInt> {
    v.0
}

/// A family of distinct subsets of `[m]`, faces given as 1-based element lists.
#[pyclass(name = "FaceSystem", module = "dsfaces", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyFaceSystem(faces::FaceSystem);

#[pymethods]
impl PyFaceSystem {
    #[new]
    fn new(m: usize, faces: Vec<Vec<u32>>) -> PyResult<Self> {
        faces::FaceSystem::new(m, &faces).map(Self).map_err(err)
    }

    /// `2^[k] - {[k]}` inside `2^[m]`.
    #[staticmethod]
    fn simplex_boundary(k: usize, m: usize) -> Self {
        Self(faces::FaceSystem::simplex_boundary(k, m))
    }

    #[staticmethod]
    fn simplex(k: usize, m: usize) -> Self {
        Self(faces::FaceSystem::simplex(k, m))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc: dsfaces::FaceSystemDoc =
            serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        faces::FaceSystem::from_doc(&doc).map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0.to_doc()).expect("face documents serialize")
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.m()
    }

    #[getter]
    fn faces(&self) -> Vec<Vec<u32>> {
        self.0.faces().iter().map(|f| f.elements()).collect()
    }

    /// Largest face cardinality, `None` when empty.
    #[getter]
    fn size(&self) -> Option<usize> {
        self.0.size()
    }

    fn f_vector(&self) -> Vec<BigInt> {
        ints(faces::long_f(&self.0))
    }

    fn h_vector(&self) -> Vec<BigInt> {
        ints(faces::long_h(&self.0))
    }

    fn is_ds(&self) -> bool {
        faces::is_ds(&self.0)
    }

    fn is_complex(&self) -> bool {
        faces::is_complex(&self.0)
    }

    fn contains(&self, face: Vec<u32>) -> PyResult<bool> {
        let single = faces::FaceSystem::new(self.0.m(), &[face]).map_err(err)?;
        Ok(single.faces().iter().all(|&f: &Face| self.0.contains(f)))
    }

    fn union(&self, other: &Self) -> Self {
        Self(self.0.union(&other.0))
    }

    fn intersection(&self, other: &Self) -> Self {
        Self(self.0.intersection(&other.0))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("FaceSystem(m={}, faces={:?})", self.0.m(), self.faces())
    }
}

/// One of `U`, `T`, `I`, `S`, `S_inv`, `D` for the given `m`.
#[pyfunction]
fn matrix(name: &str, m: usize) -> PyResult<Vec<Vec<BigRational>>> {
    build_matrix(parse::<MatrixName>(name)?, m).map(|a| rows(&a)).map_err(err)
}

/// Coefficients of `det(λI - A)` in ascending powers of `λ`.
#[pyfunction]
fn charpoly(name: &str, m: usize) -> PyResult<Vec<BigInt>> {
    let a = build_matrix(parse::<MatrixName>(name)?, m).map_err(err)?;
    char_poly(&a).map(|p| p.coeffs().to_vec()).map_err(err)
}

#[pyfunction]
fn h_from_f(f: Vec<BigInt>) -> Vec<BigInt> {
    ints(faces::h_from_f(&IntVector(f)))
}

#[pyfunction]
fn f_from_h(h: Vec<BigInt>) -> Vec<BigInt> {
    ints(faces::f_from_h(&IntVector(h)))
}

#[pyfunction]
fn is_ds_fvector(f: Vec<BigInt>) -> bool {
    faces::is_ds_fvector(&IntVector(f))
}

/// Rows of one of the six bases: `S`, `Hbullet`, `Fup`, `Hup`, `Fdown`, `Hdown`.
#[pyfunction]
fn basis(kind: &str, m: usize) -> PyResult<Vec<Vec<BigInt>>> {
    let b = bases::basis(parse::<BasisKind>(kind)?, m).map_err(err)?;
    Ok(b.vectors.iter().cloned().map(ints).collect())
}

/// Exact coordinates of `w` in a basis; `w` may hold ints or Fractions.
#[pyfunction]
fn coords(kind: &str, m: usize, w: Vec<BigRational>) -> PyResult<Vec<BigRational>> {
    let b = bases::basis(parse::<BasisKind>(kind)?, m).map_err(err)?;
    b.coords(&w).map(|c| c.0).map_err(err)
}

/// `f` or `h` of the boundary complex `2^[k] - {[k]}`.
#[pyfunction]
fn fh_bar(vector: &str, k: usize, m: usize) -> PyResult<Vec<BigInt>> {
    bases::fh_bar(parse::<VectorKind>(vector)?, k, m).map(ints).map_err(err)
}

/// Closed-form coordinate `l` of `f`/`h` of `2^[k]-bar` in a basis.
#[pyfunction]
#[pyo3(signature = (vector, basis, k, l, m, corrected = false))]
fn table1_entry(vector: &str, basis: &str, k: usize, l: usize, m: usize, corrected: bool) -> PyResult<BigRational> {
    let row = Table1Row {
        vector: parse(vector)?,
        basis: parse(basis)?,
    };
    if corrected && row.vector == VectorKind::F && row.basis == BasisKind::FDown {
        fbar_fdown_corrected(k, l, m).map_err(err)
    } else {
        bases::table1_entry(row, k, l, m).map_err(err)
    }
}

/// Squared norm of `f`/`h` of `2^[k]-bar`.
#[pyfunction]
fn norm_sq(vector: &str, k: usize, m: usize) -> PyResult<BigInt> {
    projectors::norm_sq(parse(vector)?, k, m).map_err(err)
}

/// Orthogonal projector onto the span of the `f` (or `h`) boundary vectors.
#[pyfunction]
fn projector(which: &str, m: usize) -> PyResult<Vec<Vec<BigRational>>> {
    projectors::subspace_projector(parse(which)?, m)
        .map(|p: ProjectorMatrix| rows(p.matrix()))
        .map_err(err)
}

/// Rank-1 projector onto one boundary vector, from its closed form.
#[pyfunction]
#[pyo3(signature = (vector, k, m, corrected = false))]
fn rank1_projector(vector: &str, k: usize, m: usize, corrected: bool) -> PyResult<Vec<Vec<BigRational>>> {
    let kind: VectorKind = parse(vector)?;
    if !corrected {
        return projectors::rank1_projector(kind, k, m).map(|p| rows(p.matrix())).map_err(err);
    }
    (0..=m)
        .map(|i| {
            (0..=m)
                .map(|j| rank1_projector_entry_corrected(kind, k, i, j, m))
                .collect::<dsfaces::Result<Vec<_>>>()
        })
        .collect::<dsfaces::Result<Vec<_>>>()
        .map_err(err)
}

/// Exact membership of a rational point in `Pi`, `Qf`, `Qh` or `Pf`.
#[pyfunction]
fn contains(polytope: &str, m: usize, point: Vec<BigRational>) -> PyResult<bool> {
    let label: PolytopeLabel = polytope.parse().map_err(err)?;
    let handle = PolytopeHandle::new(label, m).map_err(err)?;
    polytopes::contains(&handle, &point).map_err(err)
}

/// Number of face systems of `2^[m]` with f-vector `z`.
#[pyfunction]
fn multiplicity(z: Vec<BigInt>, m: usize) -> PyResult<BigInt> {
    polytopes::multiplicity(&IntVector(z), m).map_err(err)
}

/// Sorted DS f-vectors of the class `matching`, `opposite` or `all`.
#[pyfunction]
#[pyo3(signature = (m, class = "matching", workers = 1))]
fn ds_fvectors(py: Python<'_>, m: usize, class: &str, workers: usize) -> PyResult<Vec<Vec<i64>>> {
    let class: ParityClass = class.parse().map_err(err)?;
    let opts = EnumOptions {
        workers: workers.max(1),
        ..Default::default()
    };
    let report = py.detach(|| enumeration::ds_fvectors(m, class, &opts)).map_err(err)?;
    Ok(report.points.map(|p| p.to_vecs()).unwrap_or_default())
}

/// `(matching, opposite, all)` counts of distinct DS f-vectors.
#[pyfunction]
#[pyo3(signature = (m, workers = 1))]
fn table4_row(py: Python<'_>, m: usize, workers: usize) -> PyResult<(u64, u64, u64)> {
    let row = py.detach(|| enumeration::table4_row(m, workers.max(1))).map_err(err)?;
    Ok((row.col1, row.col2, row.col3))
}

/// Number of DS face systems (not f-vectors) of a class.
#[pyfunction]
#[pyo3(signature = (m, class = "matching"))]
fn total_ds_count(m: usize, class: &str) -> PyResult<BigInt> {
    enumeration::total_ds_count(m, class.parse().map_err(err)?).map_err(err)
}

/// Extreme rays of the cone cut out by the f-eigenspace and the orthant.
#[pyfunction]
fn cf_extreme_rays(m: usize) -> PyResult<Vec<Vec<BigInt>>> {
    spaces::cf_extreme_rays(m).map(|r| r.into_iter().map(ints).collect()).map_err(err)
}

/// Runs an identity suite over `m_from..=m_to` and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (suite, m_from, m_to = None, corrected = false))]
fn verify<'py>(
    py: Python<'py>,
    suite: &str,
    m_from: usize,
    m_to: Option<usize>,
    corrected: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let suite: Suite = suite.parse().map_err(err)?;
    let formulas = if corrected { Formulas::Corrected } else { Formulas::Printed };
    let m_to = m_to.unwrap_or(m_from);
    let report = py
        .detach(|| dsfaces::verify::verify(suite, m_from..=m_to, formulas))
        .map_err(err)?;
    let text = serde_json::to_string(&report).expect("reports serialize");
    py.import("json")?.call_method1("loads", (text,))
}

#[pymodule]
#[pyo3(name = "dsfaces")]
fn dsfaces_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFaceSystem>()?;
    m.add_function(wrap_pyfunction!(matrix, m)?)?;
    m.add_function(wrap_pyfunction!(charpoly, m)?)?;
    m.add_function(wrap_pyfunction!(h_from_f, m)?)?;
    m.add_function(wrap_pyfunction!(f_from_h, m)?)?;
    m.add_function(wrap_pyfunction!(is_ds_fvector, m)?)?;
    m.add_function(wrap_pyfunction!(basis, m)?)?;
    m.add_function(wrap_pyfunction!(coords, m)?)?;
    m.add_function(wrap_pyfunction!(fh_bar, m)?)?;
    m.add_function(wrap_pyfunction!(table1_entry, m)?)?;
    m.add_function(wrap_pyfunction!(norm_sq, m)?)?;
    m.add_function(wrap_pyfunction!(projector, m)?)?;
    m.add_function(wrap_pyfunction!(rank1_projector, m)?)?;
    m.add_function(wrap_pyfunction!(contains, m)?)?;
    m.add_function(wrap_pyfunction!(multiplicity, m)?)?;
    m.add_function(wrap_pyfunction!(ds_fvectors, m)?)?;
    m.add_function(wrap_pyfunction!(table4_row, m)?)?;
    m.add_function(wrap_pyfunction!(total_ds_count, m)?)?;
    m.add_function(wrap_pyfunction!(cf_extreme_rays, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
