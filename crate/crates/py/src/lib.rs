//! Python bindings for the type D crystal models.

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use crystald_core::crystal_core::{generate_component, CrystalElement, DEFAULT_BUDGET};
use crystald_core::foundations::{DominantWeight, Letter};
use crystald_core::kn_model::{is_valid_kn, kn_highest, KnTableau};
use crystald_core::kn_spinor_iso::psi_lambda;
use crystald_core::lusztig::{convex_order as core_convex_order, xi_lambda_traced, LusztigDatum};
use crystald_core::oracle::weyl_dim as core_weyl_dim;
use crystald_core::separation::{chi_lambda, separate_traced, VermaElement};
use crystald_core::spinor_model::{highest_element, SpinorTuple};
use crystald_core::{verify, CrystalError};

fn err(e: CrystalError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn from_py<T: serde::de::DeserializeOwned>(py: Python<'_>, obj: &Bound<'_, PyAny>) -> PyResult<T> {
    let text: String = if let Ok(s) = obj.extract::<String>() {
        s
    } else {
        py.import("json")?.call_method1("dumps", (obj,))?.extract()?
    };
    serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn parse_weight(lambda: &str) -> PyResult<DominantWeight> {
    DominantWeight::parse(lambda).map_err(err)
}

fn weight_list(w: crystald_core::foundations::Weight) -> Vec<f64> {
    w.0.iter().map(|&x| f64::from(x) / 2.0).collect()
}

/// Dominant weight from a string such as "5/2,3/2,3/2,1/2,-1/2".
#[pyclass(name = "Weight", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyWeight(DominantWeight);

#[pymethods]
impl PyWeight {
    #[new]
    fn new(lambda: &str) -> PyResult<Self> {
        parse_weight(lambda).map(PyWeight)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    /// Coordinates in the ε basis.
    #[getter]
    fn coordinates(&self) -> Vec<f64> {
        weight_list(self.0.weight())
    }

    fn weyl_dim(&self) -> String {
        core_weyl_dim(&self.0).to_string()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Weight('{}')", self.0)
    }
}

#[pyclass(name = "KnTableau", frozen, skip_from_py_object, eq, hash)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyKn(KnTableau);

#[pymethods]
impl PyKn {
    /// From a JSON string or a dict with keys n, lambda2, columns, spin.
    #[staticmethod]
    fn from_json(py: Python<'_>, data: &Bound<'_, PyAny>) -> PyResult<Self> {
        from_py(py, data).map(PyKn)
    }

    #[staticmethod]
    fn from_columns(lambda: &str, columns: Vec<Vec<Letter>>) -> PyResult<Self> {
        Ok(PyKn(KnTableau::new(parse_weight(lambda)?, columns)))
    }

    #[staticmethod]
    fn highest(lambda: &str) -> PyResult<Self> {
        Ok(PyKn(kn_highest(&parse_weight(lambda)?)))
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0)
    }

    fn is_valid(&self) -> bool {
        is_valid_kn(&self.0)
    }

    fn e(&self, i: usize) -> Option<Self> {
        self.0.e(i).map(PyKn)
    }

    fn f(&self, i: usize) -> Option<Self> {
        self.0.f(i).map(PyKn)
    }

    fn weight(&self) -> Vec<f64> {
        weight_list(self.0.weight())
    }

    /// The spinor tuple with the same position in the crystal.
    fn to_spinor(&self) -> PyResult<PySpinor> {
        psi_lambda(&self.0).map(PySpinor).map_err(err)
    }

    fn to_verma(&self) -> PyResult<PyVerma> {
        let s = psi_lambda(&self.0).map_err(err)?;
        chi_lambda(&s).map(PyVerma).map_err(err)
    }

    fn to_lusztig(&self) -> PyResult<PyLusztig> {
        xi_lambda_traced(&self.0).map(|t| PyLusztig(t.datum)).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.key()
    }
}

#[pyclass(name = "SpinorTuple", frozen, skip_from_py_object, eq, hash)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PySpinor(SpinorTuple);

#[pymethods]
impl PySpinor {
    #[staticmethod]
    fn from_json(py: Python<'_>, data: &Bound<'_, PyAny>) -> PyResult<Self> {
        from_py(py, data).map(PySpinor)
    }

    #[staticmethod]
    fn highest(lambda: &str) -> PyResult<Self> {
        Ok(PySpinor(highest_element(&parse_weight(lambda)?)))
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0)
    }

    fn is_valid(&self) -> bool {
        self.0.is_valid()
    }

    fn e(&self, i: usize) -> Option<Self> {
        self.0.e(i).map(PySpinor)
    }

    fn f(&self, i: usize) -> Option<Self> {
        self.0.f(i).map(PySpinor)
    }

    fn weight(&self) -> Vec<f64> {
        weight_list(self.0.weight())
    }

    fn n_signature(&self) -> String {
        crystald_core::crystal_core::signature_to_string(&self.0.n_signature())
    }

    fn separate(&self) -> PyResult<PyVerma> {
        chi_lambda(&self.0).map(PyVerma).map_err(err)
    }

    /// Every slide with its round, position and ◁ flag.
    fn separation_trace<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let s = separate_traced(&self.0).map_err(err)?;
        to_py(py, &s.steps)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pyclass(name = "VermaElement", frozen, skip_from_py_object, eq, hash)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyVerma(VermaElement);

#[pymethods]
impl PyVerma {
    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0)
    }

    /// Body columns left to right, each top to bottom.
    #[getter]
    fn body(&self) -> Vec<Vec<Letter>> {
        self.0.body().columns.iter().rev().map(|c| c.entries.clone()).collect()
    }

    #[getter]
    fn tail_rows(&self) -> Vec<Vec<Letter>> {
        self.0.tail_rows()
    }

    fn tau(&self) -> String {
        crystald_core::crystal_core::signature_to_string(&self.0.tau())
    }

    fn e(&self, i: usize) -> Option<Self> {
        self.0.e(i).map(PyVerma)
    }

    fn f(&self, i: usize) -> Option<Self> {
        self.0.f(i).map(PyVerma)
    }

    fn weight(&self) -> Vec<f64> {
        weight_list(self.0.weight())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pyclass(name = "LusztigDatum", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyLusztig(LusztigDatum);

#[pymethods]
impl PyLusztig {
    #[getter]
    fn c(&self) -> Vec<u32> {
        self.0.c.clone()
    }

    #[getter]
    fn shift(&self) -> Vec<f64> {
        weight_list(self.0.shift.clone())
    }

    fn weight(&self) -> Vec<f64> {
        weight_list(self.0.weight())
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pyfunction]
fn weyl_dim(lambda: &str) -> PyResult<String> {
    Ok(core_weyl_dim(&parse_weight(lambda)?).to_string())
}

/// Positive roots in the convex order, as strings such as "e4+e5".
#[pyfunction]
fn convex_order(n: usize) -> PyResult<Vec<String>> {
    let order = core_convex_order(n).map_err(err)?;
    Ok(order.beta.iter().map(ToString::to_string).collect())
}

#[pyfunction]
#[pyo3(signature = (lambda, budget = DEFAULT_BUDGET))]
fn enumerate_kn(py: Python<'_>, lambda: &str, budget: usize) -> PyResult<Vec<PyKn>> {
    let lam = parse_weight(lambda)?;
    let g = py.detach(|| generate_component(kn_highest(&lam), budget)).map_err(err)?;
    Ok(g.nodes.into_iter().map(PyKn).collect())
}

#[pyfunction]
#[pyo3(signature = (lambda, budget = DEFAULT_BUDGET))]
fn enumerate_spinor(py: Python<'_>, lambda: &str, budget: usize) -> PyResult<Vec<PySpinor>> {
    let lam = parse_weight(lambda)?;
    let g = py.detach(|| generate_component(highest_element(&lam), budget)).map_err(err)?;
    Ok(g.nodes.into_iter().map(PySpinor).collect())
}

/// Run a verification suite and return its report as a dict.
#[pyfunction]
#[pyo3(signature = (suite, n = 4, samples = 500, seed = 0, budget = DEFAULT_BUDGET))]
fn run_suite<'py>(
    py: Python<'py>,
    suite: &str,
    n: usize,
    samples: usize,
    seed: u64,
    budget: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let report = py.detach(|| -> Result<verify::SuiteReport, PyErr> {
        if suite == "rsk" {
            return Ok(verify::rsk_suite(n, 8));
        }
        let comps = verify::components(&verify::weights_for(n), budget).map_err(err)?;
        Ok(match suite {
            "dimension" => verify::dimension_suite(&comps),
            "morphism" => verify::morphism_suite(&comps),
            "knuth" => verify::knuth_suite(&comps, seed, 10_000),
            "signatures" => verify::signatures_suite(&comps),
            "separation" => verify::separation_suite(&comps, seed, samples),
            "sliding" => verify::sliding_suite(&comps),
            other => return Err(PyKeyError::new_err(format!("unknown suite {other}"))),
        })
    })?;
    to_py(py, &report)
}

#[pymodule]
fn crystald(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWeight>()?;
    m.add_class::<PyKn>()?;
    m.add_class::<PySpinor>()?;
    m.add_class::<PyVerma>()?;
    m.add_class::<PyLusztig>()?;
    m.add_function(wrap_pyfunction!(weyl_dim, m)?)?;
    m.add_function(wrap_pyfunction!(convex_order, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_kn, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_spinor, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
