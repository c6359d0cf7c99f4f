//! Python bindings. Exact values cross the boundary as strings in the same
//! notation the command-line tool prints (`2/3`, `(1 + q^2) / (1 - q^2)`).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use clebsch::cartan::{
    cartan_inverse, cm_data, eta_invariants, euclidean_cartan, hsop_search, mckay_check, prop3_check, weyl_vector,
    Method,
};
use clebsch::cg::{minor_series, relation_suite, series_matrix, Kind, Sign};
use clebsch::groups::{group_from_selector, save_group};
use clebsch::partition::Partition;
use clebsch::qseries::render::{poly_text, ratq_text};
use clebsch::quiver::{continued_fraction_check, dynkin_finiteness, graph_from_selector, preprojective_h, preprojective_identities};
use clebsch::report::Report;
use clebsch::symfun;
use clebsch::verify::{verify_all as run_verify, Level};
use clebsch::{Cyclo, GroupModel, Matrix, Rational};

fn err(e: clebsch::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for clebsch::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(err)
    }
}

fn parse<T: std::str::FromStr<Err = clebsch::Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(err)
}

fn strings<T: Clone>(m: &Matrix<T>, f: impl Fn(&T) -> String) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(&f).collect()).collect()
}

fn checks(r: &Report) -> Vec<(String, bool)> {
    r.checks.iter().map(|c| (c.identity.clone(), c.pass)).collect()
}

/// A finite group with its character table, from a selector such as
/// `cyclic:5`, `bd:3`, `2I`, `sym:4` or `file:path.json`.
#[pyclass(module = "pyclebsch", frozen)]
struct Group {
    inner: GroupModel,
}

#[pymethods]
impl Group {
    #[new]
    fn new(selector: &str) -> PyResult<Self> {
        Ok(Group { inner: group_from_selector(selector).py()? })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn order(&self) -> u64 {
        self.inner.order
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.dim_defining
    }

    #[getter]
    fn class_sizes(&self) -> Vec<u64> {
        self.inner.class_sizes.clone()
    }

    #[getter]
    fn dims(&self) -> Vec<u64> {
        self.inner.dims()
    }

    #[getter]
    fn irrep_labels(&self) -> Vec<String> {
        self.inner.irrep_labels.clone()
    }

    fn character_table(&self) -> Vec<Vec<String>> {
        strings(&self.inner.char_table, Cyclo::to_string)
    }

    fn validate(&self) -> Vec<(String, bool)> {
        self.inner.validate().checks.iter().map(|c| (c.name.clone(), c.pass)).collect()
    }

    fn save(&self, path: &str) -> PyResult<()> {
        save_group(&self.inner, path).py()
    }

    /// M[R_X(±q)] for kind in S, A, T, P and sign "q" or "-q".
    #[pyo3(signature = (kind = "S", sign = "q"))]
    fn series(&self, kind: &str, sign: &str) -> PyResult<Vec<Vec<String>>> {
        let s = series_matrix(&self.inner, parse::<Kind>(kind)?, parse::<Sign>(sign)?).py()?;
        Ok(strings(s.entries(), ratq_text))
    }

    /// Minor of a series matrix; also reports whether the character route agreed.
    #[pyo3(signature = (rows, cols, kind = "S", sign = "q"))]
    fn minor(&self, rows: Vec<usize>, cols: Vec<usize>, kind: &str, sign: &str) -> PyResult<(String, bool)> {
        let r = minor_series(&self.inner, parse(kind)?, parse(sign)?, &rows, &cols).py()?;
        Ok((ratq_text(&r.value), r.agree))
    }

    fn relation_suite(&self) -> PyResult<Vec<(String, bool)>> {
        Ok(checks(&relation_suite(&self.inner).py()?))
    }

    fn euclidean_cartan(&self) -> PyResult<Vec<Vec<String>>> {
        Ok(strings(&euclidean_cartan(&self.inner).py()?, Cyclo::to_string))
    }

    #[pyo3(signature = (method = "direct"))]
    fn cartan_inverse(&self, method: &str) -> PyResult<Vec<Vec<String>>> {
        let m = cartan_inverse(&self.inner, parse::<Method>(method)?).py()?;
        Ok(strings(&m, Cyclo::to_string))
    }

    fn mckay(&self) -> PyResult<Vec<(String, bool)>> {
        Ok(checks(&mckay_check(&self.inner).py()?))
    }

    fn eta<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let e = eta_invariants(&self.inner).py()?;
        let d = PyDict::new(py);
        d.set_item("eta0", e.eta0.iter().map(Cyclo::to_string).collect::<Vec<_>>())?;
        d.set_item("eta", strings(&e.eta, Cyclo::to_string))?;
        d.set_item("sigma", e.sign_convention)?;
        d.set_item("special", e.special)?;
        d.set_item("checks", checks(&e.checks))?;
        Ok(d)
    }

    #[pyo3(signature = (degrees = None))]
    fn cohen_macaulay<'py>(&self, py: Python<'py>, degrees: Option<Vec<u64>>) -> PyResult<Bound<'py, PyDict>> {
        let cm = cm_data(&self.inner, degrees.as_deref()).py()?;
        let d = PyDict::new(py);
        d.set_item("hsop_degrees", cm.hsop_degrees.clone())?;
        d.set_item("D", strings(&cm.dr, poly_text))?;
        d.set_item("exponents", cm.exponents.clone())?;
        d.set_item("multiplicities", cm.multiplicities.clone())?;
        d.set_item("checks", checks(&cm.checks))?;
        d.set_item("prop3", checks(&prop3_check(&self.inner, &cm).py()?))?;
        Ok(d)
    }

    fn hsop(&self) -> PyResult<Vec<u64>> {
        hsop_search(&self.inner).py()
    }

    fn weyl_vector(&self) -> PyResult<Vec<String>> {
        Ok(weyl_vector(&self.inner).py()?.iter().map(Rational::to_string).collect())
    }

    fn __repr__(&self) -> String {
        format!("Group('{}', order={})", self.inner.name, self.inner.order)
    }
}

/// A multigraph given by `dynkin:E6`, `affine:D5` or `gfile:path.json`.
#[pyclass(module = "pyclebsch", frozen)]
struct Graph {
    inner: clebsch::quiver::Graph,
}

#[pymethods]
impl Graph {
    #[new]
    fn new(selector: &str) -> PyResult<Self> {
        Ok(Graph { inner: graph_from_selector(selector).py()? })
    }

    #[getter]
    fn adjacency(&self) -> Vec<Vec<u64>> {
        self.inner.adjacency.clone()
    }

    /// H = (E - qC + q^2E)^{-1}.
    fn series(&self) -> PyResult<Vec<Vec<String>>> {
        Ok(strings(preprojective_h(&self.inner).py()?.entries(), ratq_text))
    }

    #[pyo3(signature = (terms = 12))]
    fn identities(&self, terms: usize) -> PyResult<Vec<(String, bool)>> {
        Ok(checks(&preprojective_identities(&self.inner, terms).py()?))
    }

    fn finiteness<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let f = dynkin_finiteness(&self.inner).py()?;
        let d = PyDict::new(py);
        d.set_item("polynomial", f.polynomial)?;
        d.set_item("det_vanishes_at_one", f.det_vanishes_at_one)?;
        d.set_item("dynkin_series_polynomial", f.dynkin_series_polynomial)?;
        Ok(d)
    }

    /// (q H_rr, continued fraction, equal)
    fn continued_fraction(&self) -> PyResult<(String, String, bool)> {
        let (a, b, ok) = continued_fraction_check(&self.inner).py()?;
        Ok((ratq_text(&a), ratq_text(&b), ok))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

fn part(s: &str) -> PyResult<Partition> {
    parse(s)
}

#[pyfunction]
fn kronecker(lam: &str, mu: &str, nu: &str) -> PyResult<u64> {
    symfun::kronecker_coefficient(&part(lam)?, &part(mu)?, &part(nu)?).py()
}

#[pyfunction]
fn kostka_foulkes(lam: &str, mu: &str) -> PyResult<String> {
    Ok(poly_text(&symfun::kostka_foulkes(&part(lam)?, &part(mu)?).py()?))
}

#[pyfunction]
#[pyo3(signature = (lam, range = "stable"))]
fn principal_specialization(lam: &str, range: &str) -> PyResult<String> {
    Ok(ratq_text(&symfun::principal_specialization(&part(lam)?, parse(range)?)))
}

#[pyfunction]
#[pyo3(signature = (lam, mu, range = "stable"))]
fn kron_specialized(lam: &str, mu: &str, range: &str) -> PyResult<String> {
    Ok(ratq_text(&symfun::kron_specialized(&part(lam)?, &part(mu)?, parse(range)?).py()?))
}

#[pyfunction]
fn kf_check(lam: &str, mu: &str) -> PyResult<bool> {
    Ok(symfun::kf_identity_check(&part(lam)?, &part(mu)?).py()?.pass())
}

#[pyfunction]
fn macdonald_qq(lam: &str, mu: &str) -> PyResult<String> {
    Ok(poly_text(&symfun::kostka_macdonald_qq(&part(lam)?, &part(mu)?).py()?))
}

#[pyfunction]
fn supersym_check(mu: &str, t: &str) -> PyResult<bool> {
    let t: Rational = t
        .parse()
        .map_err(|_| PyValueError::new_err(format!("'{t}' is not a rational number")))?;
    Ok(symfun::supersym_check(&part(mu)?, &t).py()?.pass())
}

#[pyfunction]
fn fake_degree_check(d: usize) -> PyResult<bool> {
    Ok(symfun::fake_degree_check(d).py()?.pass())
}

/// One `(criterion, title, pass, detail)` tuple per acceptance criterion.
#[pyfunction]
#[pyo3(signature = (level = "fast"))]
fn verify_all(py: Python<'_>, level: &str) -> PyResult<Vec<(usize, String, bool, String)>> {
    let level: Level = parse(level)?;
    let out = py.allow_threads(|| run_verify(level)).py()?;
    Ok(out
        .into_iter()
        .map(|o| (o.criterion, o.title.to_string(), o.pass, o.detail))
        .collect())
}

#[pymodule]
pub fn pyclebsch(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Group>()?;
    m.add_class::<Graph>()?;
    m.add_function(wrap_pyfunction!(kronecker, m)?)?;
    m.add_function(wrap_pyfunction!(kostka_foulkes, m)?)?;
    m.add_function(wrap_pyfunction!(principal_specialization, m)?)?;
    m.add_function(wrap_pyfunction!(kron_specialized, m)?)?;
    m.add_function(wrap_pyfunction!(kf_check, m)?)?;
    m.add_function(wrap_pyfunction!(macdonald_qq, m)?)?;
    m.add_function(wrap_pyfunction!(supersym_check, m)?)?;
    m.add_function(wrap_pyfunction!(fake_degree_check, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    Ok(())
}
