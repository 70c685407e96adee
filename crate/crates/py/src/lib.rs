//! Python bindings. Rationals cross the boundary as `"num/den"` strings
//! and reports come back as dicts.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyComplex;

use sumset_core::adele::{AdeleClassElement, CircleValue};
use sumset_core::colorings::{self, color_check as core_color_check, five_color};
use sumset_core::dynsys::{self, ClassBox, OrbitPoint, SkewVariant};
use sumset_core::folner::{self, FolnerFamily};
use sumset_core::phasepoly::{self, PhasePolynomial};
use sumset_core::ramseycomb::{self, CornersInstance, OrderedHypergraph};
use sumset_core::{BinomPoly, Error, Rational};

create_exception!(sumset_lab, SumsetError, PyValueError, "Raised for any error reported by the core library.");

fn err(e: Error) -> PyErr {
    SumsetError::new_err(e.to_string())
}

fn rat(s: &str) -> PyResult<Rational> {
    s.parse().map_err(err)
}

fn rats(v: &[String]) -> PyResult<Vec<Rational>> {
    v.iter().map(|s| rat(s)).collect()
}

fn family(s: &str) -> PyResult<FolnerFamily> {
    s.parse().map_err(err)
}

fn to_dict<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| SumsetError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Polynomial over ℚ in the binomial basis.
#[pyclass(name = "BinomPoly", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyBinomPoly(BinomPoly);

#[pymethods]
impl PyBinomPoly {
    /// Parses power form, e.g. `"x^2 + 1/2x"`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyBinomPoly(text.parse().map_err(err)?))
    }

    /// From binomial-basis coefficients `c_j` of `C(x, j)`.
    #[staticmethod]
    fn from_binomial(coeffs: Vec<String>) -> PyResult<Self> {
        Ok(PyBinomPoly(BinomPoly::new(rats(&coeffs)?)))
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    #[getter]
    fn coeffs(&self) -> Vec<String> {
        self.0.coeffs().iter().map(Rational::to_string).collect()
    }

    fn eval(&self, q: &str) -> PyResult<String> {
        Ok(self.0.eval(&rat(q)?).to_string())
    }

    /// `x ↦ P(x + r) − P(x) − P(r)`.
    fn shift_diff(&self, r: &str) -> PyResult<Self> {
        Ok(PyBinomPoly(self.0.shift_diff(&rat(r)?)))
    }

    fn derived_sequence(&self) -> PyResult<Vec<Self>> {
        Ok(self.0.derived_sequence().map_err(err)?.into_iter().map(PyBinomPoly).collect())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("BinomPoly('{}')", self.0)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

/// An element of the adele class group 𝔸/ℚ in canonical form.
#[pyclass(name = "Adele", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAdele(AdeleClassElement);

#[pymethods]
impl PyAdele {
    #[staticmethod]
    fn zero() -> Self {
        PyAdele(AdeleClassElement::zero())
    }

    #[staticmethod]
    fn from_real(x: &str) -> PyResult<Self> {
        Ok(PyAdele(AdeleClassElement::from_real(rat(x)?)))
    }

    /// The diagonal image of `q`, which is the zero class.
    #[staticmethod]
    fn diagonal(q: &str) -> PyResult<Self> {
        Ok(PyAdele(AdeleClassElement::diagonal(&rat(q)?)))
    }

    #[staticmethod]
    #[pyo3(signature = (primes, precision = 64, seed = 0))]
    fn generic(primes: Vec<u64>, precision: u32, seed: u64) -> PyResult<Self> {
        Ok(PyAdele(AdeleClassElement::generic_element(&primes, precision, seed).map_err(err)?))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyAdele(serde_json::from_str(text).map_err(|e| SumsetError::new_err(e.to_string()))?))
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(|e| SumsetError::new_err(e.to_string()))
    }

    #[getter]
    fn real_angle(&self) -> String {
        self.0.real_angle().to_string()
    }

    fn add(&self, other: &PyAdele) -> PyResult<Self> {
        Ok(PyAdele(self.0.add(&other.0).map_err(err)?))
    }

    fn sub(&self, other: &PyAdele) -> PyResult<Self> {
        Ok(PyAdele(self.0.sub(&other.0).map_err(err)?))
    }

    fn neg(&self) -> PyResult<Self> {
        Ok(PyAdele(self.0.neg().map_err(err)?))
    }

    fn scalar_mul(&self, q: &str) -> PyResult<Self> {
        Ok(PyAdele(self.0.scalar_mul(&rat(q)?).map_err(err)?))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Angle θ ∈ [0, 1) of `e_ℚ(a) = e^{2πiθ}`, exactly.
    fn e_q(&self) -> String {
        self.0.e_q().angle().to_string()
    }

    fn __add__(&self, other: &PyAdele) -> PyResult<Self> {
        self.add(other)
    }

    fn __sub__(&self, other: &PyAdele) -> PyResult<Self> {
        self.sub(other)
    }

    fn __neg__(&self) -> PyResult<Self> {
        self.neg()
    }

    fn __eq__(&self, other: &PyAdele) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Adele(real_angle={}, primes={:?})", self.0.real_angle(), self.0.parts().keys().collect::<Vec<_>>())
    }
}

fn adeles(v: &[PyRef<'_, PyAdele>]) -> Vec<AdeleClassElement> {
    v.iter().map(|a| a.0.clone()).collect()
}

/// Polynomial phase `q ↦ c · e_ℚ(Σ_j C(q, j) a_j)`.
#[pyclass(name = "PhasePolynomial", frozen)]
struct PyPhase(PhasePolynomial);

#[pymethods]
impl PyPhase {
    /// `constant` is the angle of `c`; `coeffs[j-1]` is `a_j`.
    #[new]
    fn new(constant: &str, coeffs: Vec<PyRef<'_, PyAdele>>) -> PyResult<Self> {
        Ok(PyPhase(PhasePolynomial::new(CircleValue::new(rat(constant)?), adeles(&coeffs))))
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    /// Angle of the value at `q`.
    fn eval(&self, q: &str) -> PyResult<String> {
        Ok(self.0.eval(&rat(q)?).map_err(err)?.angle().to_string())
    }

    /// `Δ_q φ(t) = φ(t + q) / φ(t)`.
    fn derivative(&self, q: &str) -> PyResult<Self> {
        Ok(PyPhase(self.0.derivative(&rat(q)?).map_err(err)?))
    }

    fn product(&self, other: &PyPhase) -> PyResult<Self> {
        Ok(PyPhase(self.0.product(&other.0).map_err(err)?))
    }

    /// Angle of `Δ_{q_1} ⋯ Δ_{q_k} φ` (a constant).
    fn multilinearize(&self, qs: Vec<String>) -> PyResult<String> {
        Ok(phasepoly::multilinearize(&self.0, &rats(&qs)?).map_err(err)?.angle().to_string())
    }

    /// The leading form evaluated at `qs`; `len(qs)` must equal the degree.
    fn leading_coefficient(&self, qs: Vec<String>) -> PyResult<String> {
        Ok(self.0.leading_coefficient().eval(&rats(&qs)?).map_err(err)?.angle().to_string())
    }
}

/// Affine skew product on `(𝔸/ℚ)^{k×l}`.
#[pyclass(name = "SkewSystem", frozen)]
struct PySkewSystem(dynsys::SkewSystem);

fn point(coords: Vec<Vec<PyRef<'_, PyAdele>>>) -> OrbitPoint {
    OrbitPoint { coords: coords.iter().map(|row| adeles(row)).collect() }
}

#[pymethods]
impl PySkewSystem {
    /// `variant` is `"qadelic"`, `"power"` or `"ztorus"`.
    #[new]
    fn new(variant: &str, k: usize, alpha: Vec<PyRef<'_, PyAdele>>) -> PyResult<Self> {
        let variant = match variant {
            "qadelic" => SkewVariant::QAdelic,
            "power" => SkewVariant::Power,
            "ztorus" => SkewVariant::ZTorus,
            v => return Err(SumsetError::new_err(format!("unknown variant {v:?}"))),
        };
        Ok(PySkewSystem(dynsys::SkewSystem::new(variant, k, adeles(&alpha)).map_err(err)?))
    }

    #[staticmethod]
    fn rotation(alpha: Vec<PyRef<'_, PyAdele>>) -> PyResult<Self> {
        Ok(PySkewSystem(dynsys::SkewSystem::rotation(adeles(&alpha)).map_err(err)?))
    }

    /// The system `t ↦ (tα, t²α)`.
    #[staticmethod]
    fn remark(alpha: &PyAdele) -> PyResult<Self> {
        Ok(PySkewSystem(dynsys::SkewSystem::remark(alpha.0.clone()).map_err(err)?))
    }

    fn origin(&self) -> Vec<Vec<PyAdele>> {
        wrap_point(self.0.origin())
    }

    /// `T^q` applied to a point given as `k` rows of `l` adeles.
    fn apply(&self, q: &str, point_rows: Vec<Vec<PyRef<'_, PyAdele>>>) -> PyResult<Vec<Vec<PyAdele>>> {
        Ok(wrap_point(self.0.apply(&rat(q)?, &point(point_rows)).map_err(err)?))
    }
}

fn wrap_point(p: OrbitPoint) -> Vec<Vec<PyAdele>> {
    p.coords.into_iter().map(|row| row.into_iter().map(PyAdele).collect()).collect()
}

/// `(1/|Φ_N|) Σ_q e_ℚ(Σ_j q^j β_j)`.
#[pyfunction]
#[pyo3(signature = (betas, n, family = "factorial"))]
fn weyl_sum<'py>(py: Python<'py>, betas: Vec<PyRef<'_, PyAdele>>, n: u32, family: &str) -> PyResult<Bound<'py, PyComplex>> {
    let z = dynsys::weyl_sum(&adeles(&betas), self::family(family)?, n).map_err(err)?;
    Ok(PyComplex::from_doubles(py, z.re, z.im))
}

#[pyfunction]
#[pyo3(signature = (alpha, u, v, n, family = "factorial"))]
fn remark_counterexample_check<'py>(
    py: Python<'py>,
    alpha: &PyAdele,
    u: (String, String),
    v: (String, String),
    n: u32,
    family: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let u = ClassBox::arc(rat(&u.0)?, rat(&u.1)?).map_err(err)?;
    let v = ClassBox::arc(rat(&v.0)?, rat(&v.1)?).map_err(err)?;
    let r = dynsys::remark_counterexample_check(&alpha.0, &u, &v, self::family(family)?, n).map_err(err)?;
    to_dict(py, &r)
}

/// Elements of `Φ_N` as strings.
#[pyfunction]
#[pyo3(signature = (n, family = "factorial"))]
fn folner_set(n: u32, family: &str) -> PyResult<Vec<String>> {
    Ok(folner::enumerate(self::family(family)?, n).map_err(err)?.iter().map(Rational::to_string).collect())
}

/// Density of `D_δ = {q : ‖q‖ < δ}` in `Φ_N`.
#[pyfunction]
#[pyo3(signature = (delta, n, family = "factorial"))]
fn return_time_density(delta: &str, n: u32, family: &str) -> PyResult<String> {
    let set = folner::return_time_set(&rat(delta)?).map_err(err)?;
    Ok(folner::density(&set, self::family(family)?, n).map_err(err)?.to_string())
}

#[pyfunction]
#[pyo3(signature = (n, x, family = "factorial"))]
fn folner_defect(n: u32, x: &str, family: &str) -> PyResult<String> {
    Ok(folner::folner_defect(self::family(family)?, n, &rat(x)?).map_err(err)?.to_string())
}

#[pyfunction]
fn color(n: u64) -> String {
    five_color(n).to_string()
}

#[pyfunction]
#[pyo3(signature = (max, sizes = vec![2, 3], max_doubling_exp = 20))]
fn color_check<'py>(py: Python<'py>, max: u64, sizes: Vec<usize>, max_doubling_exp: u32) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &core_color_check(max, &sizes, max_doubling_exp))
}

/// First `(b1, b2)` with `b1`, `b2` and `b1² + b2` all of one color.
#[pyfunction]
fn bergelson_triple(bound: u64) -> Option<(u64, u64)> {
    colorings::bergelson_triple_search(five_color, bound)
}

/// `None` when the number exceeds `cap`.
#[pyfunction]
#[pyo3(signature = (m, l, edges, r = 2, cap = 8))]
fn ordered_ramsey_number(m: usize, l: usize, edges: Vec<Vec<usize>>, r: u8, cap: usize) -> PyResult<Option<usize>> {
    let h = OrderedHypergraph::new(m, l, edges).map_err(err)?;
    Ok(match ramseycomb::ordered_ramsey_number(&h, r, cap).map_err(err)? {
        ramseycomb::RamseyOutcome::Exact { n } => Some(n),
        ramseycomb::RamseyOutcome::AboveCap { .. } => None,
    })
}

/// `values` is row-major: `values[x*n + y] = F(x, y)`.
#[pyfunction]
fn corners_count(n: usize, values: Vec<String>) -> PyResult<String> {
    let inst = CornersInstance::new(n, rats(&values)?).map_err(err)?;
    Ok(ramseycomb::corners_count(&inst).to_string())
}

#[pyfunction]
fn markov_level_set<'py>(py: Python<'py>, n: usize, values: Vec<String>, epsilon: &str) -> PyResult<Bound<'py, PyAny>> {
    let inst = CornersInstance::new(n, rats(&values)?).map_err(err)?;
    to_dict(py, &ramseycomb::markov_level_set(&inst, &rat(epsilon)?).map_err(err)?)
}

/// `member` is a Python callable `int -> bool`.
#[pyfunction]
#[pyo3(signature = (member, k, m = 4, horizon = 1_000_000, prefix_cap = 20))]
fn greedy_sumset_builder<'py>(
    py: Python<'py>,
    member: Bound<'py, PyAny>,
    k: u32,
    m: usize,
    horizon: u64,
    prefix_cap: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let failure = std::cell::RefCell::new(None);
    let a = |x: u64| match member.call1((x,)).and_then(|v| v.is_truthy()) {
        Ok(b) => b,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            false
        }
    };
    let out = ramseycomb::greedy_sumset_builder(a, horizon, k, m, prefix_cap);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    to_dict(py, &out.map_err(err)?)
}

#[pymodule]
fn sumset_lab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SumsetError", m.py().get_type::<SumsetError>())?;
    m.add_class::<PyBinomPoly>()?;
    m.add_class::<PyAdele>()?;
    m.add_class::<PyPhase>()?;
    m.add_class::<PySkewSystem>()?;
    m.add_function(wrap_pyfunction!(weyl_sum, m)?)?;
    m.add_function(wrap_pyfunction!(remark_counterexample_check, m)?)?;
    m.add_function(wrap_pyfunction!(folner_set, m)?)?;
    m.add_function(wrap_pyfunction!(return_time_density, m)?)?;
    m.add_function(wrap_pyfunction!(folner_defect, m)?)?;
    m.add_function(wrap_pyfunction!(color, m)?)?;
    m.add_function(wrap_pyfunction!(color_check, m)?)?;
    m.add_function(wrap_pyfunction!(bergelson_triple, m)?)?;
    m.add_function(wrap_pyfunction!(ordered_ramsey_number, m)?)?;
    m.add_function(wrap_pyfunction!(corners_count, m)?)?;
    m.add_function(wrap_pyfunction!(markov_level_set, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_sumset_builder, m)?)?;
    Ok(())
}
