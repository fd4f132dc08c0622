//! Python bindings: schemes with their checks and orientations, finite
//! quadratic forms, integral lattices and the enumerator.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use realcurves::enumerate::enumerate;
use realcurves::forms::intmat::{self, Mat};
use realcurves::forms::{van_der_blij_check, IntegralLattice, LatticeInvolution, QuadraticSpace};
use realcurves::golden::diff_golden;
use realcurves::notation::{parse, Parsed};
use realcurves::orientation::{admissible_orientations, DEFAULT_SEARCH_LIMIT};
use realcurves::rules::{check_all, CheckOptions};
use realcurves::{CurveClass, Error, OrientedScheme, RealScheme, Surface, TypeClaim};

create_exception!(pyrealcurves, RealCurvesError, PyValueError);
create_exception!(pyrealcurves, ParseError, RealCurvesError);
create_exception!(pyrealcurves, SearchTooLarge, RealCurvesError);

fn err(e: Error) -> PyErr {
    match e {
        Error::Parse { position, message } => ParseError::new_err((message, position)),
        e @ Error::SearchTooLarge { .. } => SearchTooLarge::new_err(e.to_string()),
        e => RealCurvesError::new_err(format!("{}: {}", e.kind(), e)),
    }
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn curve(surface: &str, degree: Option<u32>, bidegree: Option<(u32, u32)>) -> PyResult<(Surface, CurveClass)> {
    let s = Surface::from_name(surface)
        .ok_or_else(|| RealCurvesError::new_err(format!("unknown surface '{}'", surface)))?;
    let c = match (degree, bidegree) {
        (Some(d), None) => CurveClass::Degree(d),
        (None, Some((a, b))) => CurveClass::Bidegree(a, b),
        _ => return Err(RealCurvesError::new_err("give exactly one of degree or bidegree")),
    };
    c.check_for(s).map_err(err)?;
    Ok((s, c))
}

fn claim(name: &str) -> PyResult<TypeClaim> {
    TypeClaim::from_name(name).ok_or_else(|| RealCurvesError::new_err(format!("unknown type claim '{}'", name)))
}

fn aux(degrees: Option<Vec<u32>>) -> CheckOptions {
    match degrees {
        Some(aux_degrees) => CheckOptions { aux_degrees },
        None => CheckOptions::default(),
    }
}

/// A real scheme, or an oriented one when the text carries signs.
#[pyclass(module = "pyrealcurves", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct Scheme {
    real: RealScheme,
    oriented: Option<OrientedScheme>,
}

impl Scheme {
    fn wrap(p: Parsed) -> Scheme {
        match p {
            Parsed::Real(real) => Scheme { real, oriented: None },
            Parsed::Oriented(o) => Scheme { real: o.forget(), oriented: Some(o) },
        }
    }
}

#[pymethods]
impl Scheme {
    #[new]
    #[pyo3(signature = (text, surface = "plane", degree = None, bidegree = None))]
    fn new(text: &str, surface: &str, degree: Option<u32>, bidegree: Option<(u32, u32)>) -> PyResult<Self> {
        let (s, c) = curve(surface, degree, bidegree)?;
        Ok(Scheme::wrap(parse(text, s, c).map_err(err)?))
    }

    #[getter]
    fn text(&self) -> String {
        match &self.oriented {
            Some(o) => o.render(),
            None => self.real.render(),
        }
    }

    #[getter]
    fn surface(&self) -> &'static str {
        self.real.surface().name()
    }

    #[getter]
    fn curve_class(&self) -> String {
        self.real.class().text()
    }

    #[getter]
    fn is_oriented(&self) -> bool {
        self.oriented.is_some()
    }

    #[getter]
    fn components(&self) -> usize {
        self.real.l()
    }

    #[getter]
    fn defect(&self) -> i64 {
        self.real.m_defect()
    }

    #[getter]
    fn depth(&self) -> u32 {
        self.real.max_depth()
    }

    /// The underlying real scheme.
    fn forget(&self) -> Scheme {
        Scheme { real: self.real.clone(), oriented: None }
    }

    /// Reverse every orientation.
    fn flip(&self) -> PyResult<Scheme> {
        let o = self.oriented.as_ref().ok_or_else(|| RealCurvesError::new_err("scheme has no orientation"))?;
        Ok(Scheme { real: self.real.clone(), oriented: Some(o.flip()) })
    }

    /// Run every prohibition and return the report as a dict.
    #[pyo3(signature = (claim = "unknown", aux_degrees = None))]
    fn check<'py>(&self, py: Python<'py>, claim: &str, aux_degrees: Option<Vec<u32>>) -> PyResult<Bound<'py, PyAny>> {
        let r = check_all(&self.real, self::claim(claim)?, self.oriented.as_ref(), &aux(aux_degrees));
        json_to_py(py, &r.to_json())
    }

    /// Oriented schemes allowed by the complex orientation formulas,
    /// one per class modulo reversing all orientations.
    #[pyo3(signature = (limit = DEFAULT_SEARCH_LIMIT))]
    fn orientations(&self, limit: usize) -> PyResult<Vec<Scheme>> {
        admissible_orientations(&self.real, limit)
            .map_err(err)?
            .into_iter()
            .map(|c| {
                let o = c.apply(&self.real).map_err(err)?;
                Ok(Scheme { real: self.real.clone(), oriented: Some(o) })
            })
            .collect()
    }

    fn __str__(&self) -> String {
        self.text()
    }

    fn __repr__(&self) -> String {
        format!("Scheme('{}', surface='{}', class='{}')", self.text(), self.surface(), self.curve_class())
    }
}

/// Brown invariant of a word in A+, A-, U, V.
#[pyfunction]
fn brown(word: &str) -> PyResult<u8> {
    QuadraticSpace::from_word(word).and_then(|q| q.brown()).map_err(err)
}

/// Rank, parity, Brown invariant and normal form of a word.
#[pyfunction]
fn classify<'py>(py: Python<'py>, word: &str) -> PyResult<Bound<'py, PyAny>> {
    let c = QuadraticSpace::from_word(word).and_then(|q| q.classify()).map_err(err)?;
    let v = serde_json::json!({
        "rank": c.rank,
        "parity": c.parity.to_string(),
        "brown": c.brown,
        "normal_form": realcurves::forms::quadratic::word_text(&c.word),
    });
    json_to_py(py, &v)
}

fn to_mat(rows: Vec<Vec<i64>>) -> Mat {
    intmat::from_i64(&rows)
}

/// A nondegenerate symmetric integral lattice given by its Gram matrix.
#[pyclass(module = "pyrealcurves", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Lattice {
    inner: IntegralLattice,
}

#[pymethods]
impl Lattice {
    #[new]
    fn new(gram: Vec<Vec<i64>>) -> PyResult<Self> {
        Ok(Lattice { inner: IntegralLattice::from_rows(&gram).map_err(err)? })
    }

    #[staticmethod]
    fn e8() -> Self {
        Lattice { inner: IntegralLattice::e8() }
    }

    #[staticmethod]
    fn d4() -> Self {
        Lattice { inner: IntegralLattice::d4() }
    }

    #[staticmethod]
    fn u() -> Self {
        Lattice { inner: IntegralLattice::u() }
    }

    #[staticmethod]
    fn diag(values: Vec<i64>) -> Self {
        Lattice { inner: IntegralLattice::diag(&values) }
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn signature(&self) -> PyResult<i64> {
        self.inner.signature().map_err(err)
    }

    #[getter]
    fn determinant(&self) -> BigInt {
        self.inner.determinant()
    }

    #[getter]
    fn is_even(&self) -> bool {
        self.inner.is_even()
    }

    fn direct_sum(&self, other: &Lattice) -> Lattice {
        Lattice { inner: self.inner.direct_sum(&other.inner) }
    }

    /// Invariant factors of the discriminant group, and its quadratic
    /// form when the lattice is even of period 2.
    fn discriminant<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let d = self.inner.discriminant().map_err(err)?;
        let mut v = serde_json::json!({
            "factors": d.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "order": d.order().to_string(),
            "form": null,
            "brown": null,
        });
        if let Some(q) = &d.form {
            let c = q.classify().map_err(err)?;
            v["form"] = serde_json::json!(realcurves::forms::quadratic::word_text(&c.word));
            v["brown"] = serde_json::json!(c.brown);
        }
        json_to_py(py, &v)
    }

    /// Verdicts comparing the Brown invariant with the signature.
    fn van_der_blij<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let vs = van_der_blij_check(&self.inner).map_err(err)?;
        json_to_py(py, &serde_json::to_value(&vs).expect("verdicts serialize"))
    }

    /// Eigenlattices of an involutive isometry given in the lattice basis.
    fn eigenlattices<'py>(&self, py: Python<'py>, matrix: Vec<Vec<i64>>) -> PyResult<Bound<'py, PyAny>> {
        let e =
            LatticeInvolution::new(self.inner.clone(), to_mat(matrix)).and_then(|i| i.eigenlattices()).map_err(err)?;
        let v = serde_json::json!({
            "plus": {"rank": e.plus.rank(), "determinant": e.plus.determinant().to_string()},
            "minus": {"rank": e.minus.rank(), "determinant": e.minus.determinant().to_string()},
            "dim_j": e.dim_j,
        });
        json_to_py(py, &v)
    }

    fn __repr__(&self) -> String {
        format!("Lattice({:?})", self.inner.gram_i64().unwrap_or_default())
    }
}

/// Every candidate scheme of a class with the type claims it survives.
#[pyfunction]
#[pyo3(signature = (surface = "plane", degree = None, bidegree = None, aux_degrees = None))]
fn enumerate_schemes(
    surface: &str,
    degree: Option<u32>,
    bidegree: Option<(u32, u32)>,
    aux_degrees: Option<Vec<u32>>,
) -> PyResult<Vec<(String, Vec<&'static str>)>> {
    let (s, c) = curve(surface, degree, bidegree)?;
    let entries = enumerate(s, c, None, &aux(aux_degrees)).map_err(err)?;
    Ok(entries
        .into_iter()
        .map(|e| {
            let claims = e.admissible_claims().into_iter().map(|c| c.name()).collect();
            (e.text, claims)
        })
        .collect())
}

/// Compare the enumerator against the shipped table for a class.
#[pyfunction]
#[pyo3(signature = (surface, bidegree, aux_degrees = None))]
fn golden_diff<'py>(
    py: Python<'py>,
    surface: &str,
    bidegree: (u32, u32),
    aux_degrees: Option<Vec<u32>>,
) -> PyResult<Bound<'py, PyAny>> {
    let (s, c) = curve(surface, None, Some(bidegree))?;
    let d = diff_golden(s, c, &aux(aux_degrees)).map_err(err)?;
    json_to_py(py, &serde_json::to_value(&d).expect("diff serializes"))
}

/// Run the command line tool in process; returns (exit code, output).
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String) {
    realcurves::cli::run(&args)
}

#[pymodule]
fn pyrealcurves(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Scheme>()?;
    m.add_class::<Lattice>()?;
    m.add_function(wrap_pyfunction!(brown, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_schemes, m)?)?;
    m.add_function(wrap_pyfunction!(golden_diff, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add("RealCurvesError", m.py().get_type::<RealCurvesError>())?;
    m.add("ParseError", m.py().get_type::<ParseError>())?;
    m.add("SearchTooLarge", m.py().get_type::<SearchTooLarge>())?;
    Ok(())
}
