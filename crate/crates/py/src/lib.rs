//! Python bindings. Reports come back as plain dicts and lists, rationals as `"p/q"` strings.

use std::fmt::Display;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use pel_core::admit::{decide, MorphismSpec};
use pel_core::cli::classify_report;
use pel_core::exactlin::RatMatrix;
use pel_core::fixtures;
use pel_core::hodge::{hodge_type, HodgeCochar};
use pel_core::isofun::{run_law_suite, IsoMorphism, LatticeObject};
use pel_core::pelcheck::{factorize, validate, PelDatum};
use pel_core::repcalc::{decompose, irr_char, parse_tensor, pel_standard, RootDatum, Weight, WeightChar};

fn value_error(e: impl Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn from_py<T: serde::de::DeserializeOwned>(obj: &Bound<'_, PyAny>) -> PyResult<T> {
    let text: String = obj.py().import("json")?.call_method1("dumps", (obj,))?.extract()?;
    serde_json::from_str(&text).map_err(value_error)
}

fn char_items(x: &WeightChar) -> Vec<(Weight, i64)> {
    x.support().iter().map(|(w, &m)| (w.clone(), m)).collect()
}

/// A PEL-datum: algebra with involution, alternating pairing, and `j = h(i)`.
#[pyclass(name = "PelDatum", module = "pelkit", frozen)]
struct PyPelDatum {
    inner: PelDatum,
}

#[pymethods]
impl PyPelDatum {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(|inner| PyPelDatum { inner }).map_err(value_error)
    }

    /// One of `modular_curve`, `morita`, `gu11`, `quaternion`.
    #[staticmethod]
    fn example(name: &str) -> PyResult<Self> {
        let inner = match name {
            "modular_curve" => fixtures::modular_curve_datum(),
            "morita" => fixtures::morita_datum(),
            "gu11" => fixtures::gu11_datum(),
            "quaternion" => fixtures::quaternion_datum(),
            other => return Err(value_error(format!("no example named {other:?}"))),
        };
        Ok(PyPelDatum { inner })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(value_error)
    }

    #[getter]
    fn dim_v(&self) -> usize {
        self.inner.dim_v()
    }

    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &validate(&self.inner))
    }

    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let f = factorize(&self.inner).map_err(value_error)?;
        to_py(py, &classify_report(&f))
    }

    /// Hodge bidegrees of `std`, `dual`, or the irreducible with the given highest weight.
    #[pyo3(signature = (rep = None))]
    fn hodge(&self, rep: Option<&Bound<'_, PyAny>>) -> PyResult<Vec<(i64, i64)>> {
        let f = factorize(&self.inner).map_err(value_error)?;
        let (rd, std) = pel_standard(&f).map_err(value_error)?;
        let hc = HodgeCochar::for_factorization(&rd, &f).map_err(value_error)?;
        let x = match rep {
            None => std,
            Some(r) => match r.extract::<String>() {
                Ok(s) if s == "std" => std,
                Ok(s) if s == "dual" => std.dual(),
                Ok(s) => return Err(value_error(format!("unknown representation {s:?}"))),
                Err(_) => irr_char(&rd, &r.extract::<Weight>()?).map_err(value_error)?,
            },
        };
        Ok(hodge_type(&x, &hc).map_err(value_error)?.into_iter().collect())
    }

    fn __repr__(&self) -> String {
        format!("PelDatum(dim_v={})", self.inner.dim_v())
    }
}

/// Root datum such as `RootDatum("C2", central=1)`.
#[pyclass(name = "RootDatum", module = "pelkit", frozen)]
struct PyRootDatum {
    inner: RootDatum,
}

#[pymethods]
impl PyRootDatum {
    #[new]
    #[pyo3(signature = (spec, central = 0))]
    fn new(spec: &str, central: usize) -> PyResult<Self> {
        RootDatum::parse(spec, central).map(|inner| PyRootDatum { inner }).map_err(value_error)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.total_rank()
    }

    /// Weight multiplicities of the irreducible with this highest weight.
    fn irr_char(&self, highest: Weight) -> PyResult<Vec<(Weight, i64)>> {
        Ok(char_items(&irr_char(&self.inner, &highest).map_err(value_error)?))
    }

    fn dimension(&self, highest: Weight) -> PyResult<i64> {
        Ok(irr_char(&self.inner, &highest).map_err(value_error)?.dim())
    }

    fn standard_char(&self) -> Vec<(Weight, i64)> {
        char_items(&self.inner.standard_char())
    }

    /// Irreducible constituents of a tensor expression such as `"std,std"`.
    fn decompose(&self, tensor: &str) -> PyResult<Vec<(Weight, i64)>> {
        let x = parse_tensor(&self.inner, tensor).map_err(value_error)?;
        let parts = decompose(&self.inner, &x, false).map_err(value_error)?;
        Ok(parts.into_iter().map(|c| (c.highest, c.mult)).collect())
    }

    fn __repr__(&self) -> String {
        format!("RootDatum({:?})", self.inner.to_string())
    }
}

/// Admissibility verdict for a morphism given as a dict (or JSON string).
#[pyfunction]
fn admissible<'py>(py: Python<'py>, morphism: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let spec: MorphismSpec = match morphism.extract::<String>() {
        Ok(text) => serde_json::from_str(&text).map_err(value_error)?,
        Err(_) => from_py(morphism)?,
    };
    let m = spec.resolve().map_err(value_error)?;
    to_py(py, &decide(&m).map_err(value_error)?)
}

/// Least `n` with `n·f` integral from the lattice spanned by the columns of `src` to that of `dst`.
#[pyfunction]
fn minimal_n(f: &Bound<'_, PyAny>, src: &Bound<'_, PyAny>, dst: &Bound<'_, PyAny>) -> PyResult<String> {
    let f: RatMatrix = from_py(f)?;
    let src = LatticeObject::new(from_py(src)?).map_err(value_error)?;
    let dst = LatticeObject::new(from_py(dst)?).map_err(value_error)?;
    Ok(IsoMorphism::from_map(&f, &src, &dst).map_err(value_error)?.n_used.to_string())
}

#[pyfunction]
#[pyo3(signature = (trials = 500, seed = 0))]
fn isofun_check<'py>(py: Python<'py>, trials: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &run_law_suite(trials, seed))
}

#[pyfunction]
#[pyo3(signature = (seed = 0))]
fn run_fixtures<'py>(py: Python<'py>, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &fixtures::run_fixtures(seed))
}

#[pymodule]
fn pelkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPelDatum>()?;
    m.add_class::<PyRootDatum>()?;
    m.add_function(wrap_pyfunction!(admissible, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_n, m)?)?;
    m.add_function(wrap_pyfunction!(isofun_check, m)?)?;
    m.add_function(wrap_pyfunction!(run_fixtures, m)?)?;
    Ok(())
}
