//! Python bindings. Rationals cross the boundary as strings such as `"26/3"`;
//! arguments accept anything whose `str()` parses (int, str, `Fraction`).

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use reldecay::decay::{self, Exponent, Threshold};
use reldecay::parabolic::{heisenberg_tower, modular_weight};
use reldecay::weyl::{enumerate_weyl, DEFAULT_ORDER_CAP};
use reldecay::{Catalog, Error, Root, Weight, WeylElement};

fn err(e: Error) -> PyErr {
    match e {
        Error::UnknownGroup(_) => PyKeyError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn threshold(obj: &Bound<'_, PyAny>) -> PyResult<Threshold> {
    let s = obj.str()?.to_string();
    s.parse::<Threshold>().map_err(PyValueError::new_err)
}

fn weight(objs: &[Bound<'_, PyAny>]) -> PyResult<Weight> {
    let mut v = Vec::with_capacity(objs.len());
    for o in objs {
        v.push(reldecay::rational::parse_rational(&o.str()?.to_string()).map_err(PyValueError::new_err)?);
    }
    Ok(Weight(v))
}

fn strings(w: &Weight) -> Vec<String> {
    w.0.iter().map(reldecay::rational::format_rational).collect()
}

fn catalog(path: Option<&str>) -> PyResult<Catalog> {
    match path {
        Some(p) => Catalog::load(p).map_err(err),
        None => Ok(Catalog::builtin()),
    }
}

/// A reduced root system with root multiplicities.
#[pyclass(name = "RootSystem", module = "reldecay", frozen)]
struct PyRootSystem {
    inner: reldecay::RootSystem,
}

#[pymethods]
impl PyRootSystem {
    #[new]
    #[pyo3(signature = (cartan, short_multiplicity = 1))]
    fn new(cartan: Vec<Vec<i64>>, short_multiplicity: u32) -> PyResult<Self> {
        let inner = reldecay::RootSystem::with_short_multiplicity(cartan, short_multiplicity).map_err(err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (name, catalog_path = None))]
    fn from_catalog(name: &str, catalog_path: Option<&str>) -> PyResult<Self> {
        let cat = catalog(catalog_path)?;
        let inner = cat.get(name).and_then(|g| g.root_system()).map_err(err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn cartan(&self) -> Vec<Vec<i64>> {
        self.inner.cartan().to_vec()
    }

    fn positive_roots(&self) -> Vec<Vec<i64>> {
        self.inner.positive_roots().iter().map(|r| r.0.clone()).collect()
    }

    fn highest_root(&self) -> PyResult<Vec<i64>> {
        self.inner.highest_root().map(|r| r.0).map_err(err)
    }

    fn pairing(&self, a: Vec<i64>, b: Vec<i64>) -> PyResult<i64> {
        let (a, b) = (Root(a), Root(b));
        self.inner.check_root(&a).map_err(err)?;
        self.inner.check_root(&b).map_err(err)?;
        Ok(self.inner.pairing_roots(&a, &b))
    }

    fn multiplicity(&self, root: Vec<i64>) -> PyResult<u32> {
        let r = Root(root);
        self.inner.check_root(&r).map_err(err)?;
        Ok(self.inner.multiplicity(&r))
    }

    /// Image of a root under a word, rightmost reflection first.
    fn apply_word(&self, word: Vec<usize>, root: Vec<i64>) -> PyResult<Vec<i64>> {
        let w = WeylElement::from_word(&self.inner, &word).map_err(err)?;
        Ok(w.apply_root(&Root(root)).0)
    }

    #[pyo3(signature = (cap = DEFAULT_ORDER_CAP))]
    fn weyl_order(&self, cap: usize) -> PyResult<usize> {
        enumerate_weyl(&self.inner, cap).map(|w| w.len()).map_err(err)
    }

    /// The modular weight 2ρ as rational strings.
    fn delta(&self) -> PyResult<Vec<String>> {
        modular_weight(&self.inner, self.inner.positive_roots())
            .map(|w| strings(&w))
            .map_err(err)
    }

    fn tower_sizes(&self) -> PyResult<Vec<usize>> {
        let t = heisenberg_tower(&self.inner).map_err(err)?;
        Ok(t.iter().map(|l| l.radical_roots.len()).collect())
    }

    fn __repr__(&self) -> String {
        format!("RootSystem(rank={}, positive_roots={})", self.inner.rank(), self.inner.positive_roots().len())
    }
}

/// Sharp threshold from matrix-coefficient exponents.
#[pyfunction]
fn sharp_p(delta_g: Vec<Bound<'_, PyAny>>, exponents: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<String> {
    let d = weight(&delta_g)?;
    let e = exponents
        .iter()
        .map(|x| weight(x).map(Exponent))
        .collect::<PyResult<Vec<_>>>()?;
    let b = decay::sharp_p_from_exponents(&d, &e).map_err(err)?;
    Ok(b.threshold.to_string())
}

#[pyfunction]
fn holder_combine(p: &Bound<'_, PyAny>, q: &Bound<'_, PyAny>) -> PyResult<String> {
    decay::holder_combine(threshold(p)?, threshold(q)?)
        .map(|t| t.to_string())
        .map_err(err)
}

#[pyfunction]
fn isolation_check(p_nonminimal: &Bound<'_, PyAny>, p_min: &Bound<'_, PyAny>) -> PyResult<Option<u32>> {
    Ok(decay::isolation_check(threshold(p_nonminimal)?, threshold(p_min)?))
}

/// Full decay report for a catalog group, as a JSON string.
#[pyfunction]
#[pyo3(signature = (group, catalog_path = None))]
fn pipeline(group: &str, catalog_path: Option<&str>) -> PyResult<String> {
    let cat = catalog(catalog_path)?;
    let report = cat.get(group).and_then(reldecay::pipeline).map_err(err)?;
    serde_json::to_string_pretty(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyfunction]
#[pyo3(signature = (catalog_path = None))]
fn catalog_names(catalog_path: Option<&str>) -> PyResult<Vec<String>> {
    Ok(catalog(catalog_path)?.names().into_iter().map(String::from).collect())
}

#[pymodule(name = "reldecay")]
fn reldecay_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootSystem>()?;
    m.add_function(wrap_pyfunction!(sharp_p, m)?)?;
    m.add_function(wrap_pyfunction!(holder_combine, m)?)?;
    m.add_function(wrap_pyfunction!(isolation_check, m)?)?;
    m.add_function(wrap_pyfunction!(pipeline, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    Ok(())
}
