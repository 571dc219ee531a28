//! Python bindings. Rings are given as a prime `p`, or `0`/`"Z"` for the
//! integers; FI-modules use the same descriptors as the command line.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use dpcoh_core::dpa::{freeness_certificate, periodicity_certificate, DPElement, DPPresentation};
use dpcoh_core::exactlin::{quotient_structure, Integers, Mat, PrimeField, Ring, RingMode};
use dpcoh_core::fimod::{FIDescriptor, FIModuleHandle};
use dpcoh_core::gamma::{build_gamma, fi_claim, hemmer_claim, nakaoka_table, periodicity_check, PeriodicityClaim};
use dpcoh_core::grpcoh::{cohomology, Method};
use dpcoh_core::symrep::{Rep, YoungSubgroup};
use dpcoh_core::verify::{run_suite, DEFAULT_SEED};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn ring_mode(ring: &Bound<'_, PyAny>) -> PyResult<RingMode> {
    if let Ok(p) = ring.extract::<u64>() {
        return RingMode::from_characteristic(p).map_err(err);
    }
    let s: String = ring.extract()?;
    s.parse().map_err(err)
}

fn field(mode: RingMode) -> PyResult<PrimeField> {
    mode.field().map_err(err)
}

/// Runs `$body` with `$r` bound to the concrete ring.
macro_rules! dispatch {
    ($mode:expr, $r:ident => $body:expr) => {
        match $mode {
            RingMode::Integers => {
                let $r = &Integers;
                $body
            }
            RingMode::Prime(p) => {
                let $r = &PrimeField::new(p).map_err(err)?;
                $body
            }
        }
    };
}

#[derive(Clone)]
enum Elem {
    Z(DPElement<Integers>),
    F(DPElement<PrimeField>),
}

/// An element `Σ c_n x^[n]` of the divided power algebra.
#[pyclass(name = "Element", module = "dpcoh", skip_from_py_object)]
#[derive(Clone)]
struct PyElement {
    inner: Elem,
}

macro_rules! binop {
    ($a:expr, $b:expr, $f:ident) => {
        match (&$a.inner, &$b.inner) {
            (Elem::Z(x), Elem::Z(y)) => Ok(PyElement { inner: Elem::Z(x.$f(y)) }),
            (Elem::F(x), Elem::F(y)) if x.ring() == y.ring() => Ok(PyElement { inner: Elem::F(x.$f(y)) }),
            _ => Err(err("elements live over different rings")),
        }
    };
}

#[pymethods]
impl PyElement {
    /// Parses `"3*x[2] + x[5]"`.
    #[new]
    fn new(ring: &Bound<'_, PyAny>, text: &str) -> PyResult<Self> {
        let inner = match ring_mode(ring)? {
            RingMode::Integers => Elem::Z(DPElement::parse(&Integers, text).map_err(err)?),
            RingMode::Prime(p) => Elem::F(DPElement::parse(&PrimeField::new(p).map_err(err)?, text).map_err(err)?),
        };
        Ok(PyElement { inner })
    }

    fn __mul__(&self, other: &PyElement) -> PyResult<PyElement> {
        binop!(self, other, mul)
    }

    fn __add__(&self, other: &PyElement) -> PyResult<PyElement> {
        binop!(self, other, add)
    }

    fn __sub__(&self, other: &PyElement) -> PyResult<PyElement> {
        binop!(self, other, sub)
    }

    fn __eq__(&self, other: &PyElement) -> bool {
        match (&self.inner, &other.inner) {
            (Elem::Z(x), Elem::Z(y)) => x == y,
            (Elem::F(x), Elem::F(y)) => x == y,
            _ => false,
        }
    }

    fn __pow__(&self, e: usize, _modulo: Option<usize>) -> PyElement {
        let inner = match &self.inner {
            Elem::Z(x) => Elem::Z(x.pow(e)),
            Elem::F(x) => Elem::F(x.pow(e)),
        };
        PyElement { inner }
    }

    /// `d` for `q = 1`, `d_q` for `q` a power of the characteristic.
    #[pyo3(signature = (q = 1))]
    fn derive(&self, q: usize) -> PyResult<PyElement> {
        let inner = match &self.inner {
            Elem::Z(x) => Elem::Z(x.derive(q).map_err(err)?),
            Elem::F(x) => Elem::F(x.derive(q).map_err(err)?),
        };
        Ok(PyElement { inner })
    }

    /// Coefficient of `x^[n]` as an integer (the canonical residue over `F_p`).
    fn coeff(&self, n: usize) -> String {
        match &self.inner {
            Elem::Z(x) => x.coeff(n).to_string(),
            Elem::F(x) => x.coeff(n).to_string(),
        }
    }

    fn is_zero(&self) -> bool {
        match &self.inner {
            Elem::Z(x) => x.is_zero(),
            Elem::F(x) => x.is_zero(),
        }
    }

    fn __str__(&self) -> String {
        match &self.inner {
            Elem::Z(x) => x.to_string(),
            Elem::F(x) => x.to_string(),
        }
    }

    fn __repr__(&self) -> String {
        let ring = match &self.inner {
            Elem::Z(_) => "Z".to_string(),
            Elem::F(x) => x.ring().p().to_string(),
        };
        format!("Element({ring:?}, {:?})", self.__str__())
    }
}

#[derive(Clone)]
enum Pres {
    Z(DPPresentation<Integers>),
    F(DPPresentation<PrimeField>),
}

/// A finitely presented graded module over the divided power algebra.
#[pyclass(name = "Presentation", module = "dpcoh", skip_from_py_object)]
#[derive(Clone)]
struct PyPresentation {
    inner: Pres,
}

impl PyPresentation {
    fn wrap_z(p: DPPresentation<Integers>) -> Self {
        PyPresentation { inner: Pres::Z(p) }
    }
    fn wrap_f(p: DPPresentation<PrimeField>) -> Self {
        PyPresentation { inner: Pres::F(p) }
    }
    fn build(
        ring: &Bound<'_, PyAny>,
        z: impl FnOnce(&Integers) -> PyResult<DPPresentation<Integers>>,
        f: impl FnOnce(&PrimeField) -> PyResult<DPPresentation<PrimeField>>,
    ) -> PyResult<Self> {
        Ok(match ring_mode(ring)? {
            RingMode::Integers => Self::wrap_z(z(&Integers)?),
            RingMode::Prime(p) => Self::wrap_f(f(&PrimeField::new(p).map_err(err)?)?),
        })
    }
}

#[pymethods]
impl PyPresentation {
    /// Parses the `.dpm` line format (`gen`, `rel`, `window`).
    #[staticmethod]
    fn parse(ring: &Bound<'_, PyAny>, text: &str) -> PyResult<Self> {
        Self::build(
            ring,
            |r| DPPresentation::parse(r, text).map_err(err),
            |r| DPPresentation::parse(r, text).map_err(err),
        )
    }

    #[staticmethod]
    fn free(ring: &Bound<'_, PyAny>, degrees: Vec<usize>) -> PyResult<Self> {
        Self::build(ring, |r| Ok(DPPresentation::free(r, &degrees)), |r| Ok(DPPresentation::free(r, &degrees)))
    }

    /// Cokernel of `D[2] → D[1]`, `x^[0] ↦ 2x^[1]`.
    #[staticmethod]
    fn sphere(ring: &Bound<'_, PyAny>) -> PyResult<Self> {
        Self::build(ring, |r| Ok(DPPresentation::sphere(r)), |r| Ok(DPPresentation::sphere(r)))
    }

    fn to_text(&self) -> String {
        match &self.inner {
            Pres::Z(p) => p.to_text(),
            Pres::F(p) => p.to_text(),
        }
    }

    /// Minimal number of generators of the degree `n` piece.
    fn dim(&self, n: usize) -> usize {
        match &self.inner {
            Pres::Z(p) => p.graded_piece(n).generators(),
            Pres::F(p) => p.dim(n),
        }
    }

    /// The degree `n` piece, e.g. `"Z/6"` or `"F_2^3"`.
    fn piece(&self, n: usize) -> String {
        match &self.inner {
            Pres::Z(p) => p.graded_piece(n).render(p.ring()),
            Pres::F(p) => p.graded_piece(n).render(p.ring()),
        }
    }

    /// `epsilon`, `g_epsilon`, `lambda` and the basis degrees over `D_{≥ε}`.
    fn epsilon<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let c = match &self.inner {
            Pres::Z(_) => return Err(err(RingMode::Integers.field().unwrap_err())),
            Pres::F(p) => freeness_certificate(p).map_err(err)?,
        };
        let d = PyDict::new(py);
        d.set_item("p", c.p)?;
        d.set_item("epsilon", c.epsilon)?;
        d.set_item("g_epsilon", c.g_r)?;
        d.set_item("lambda", c.lambda)?;
        d.set_item("basis_degrees", c.basis_degrees.clone())?;
        d.set_item("consistent", c.check())?;
        Ok(d)
    }

    /// Onset and period of `n ↦ dim M_n`, confirmed on a window.
    fn period<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let c = match &self.inner {
            Pres::Z(p) => periodicity_certificate(p).map_err(err)?,
            Pres::F(p) => periodicity_certificate(p).map_err(err)?,
        };
        let d = PyDict::new(py);
        d.set_item("onset", c.onset)?;
        d.set_item("period", c.period)?;
        d.set_item("epsilon", c.epsilon)?;
        d.set_item("minimal_period", c.minimal_period)?;
        d.set_item("window", (c.window_start, c.window_end))?;
        d.set_item("dims", c.dims.clone())?;
        d.set_item("confirmed", c.confirmed)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!("Presentation({:?})", self.to_text())
    }
}

/// Product of two elements given as text.
#[pyfunction]
fn dp_mul(ring: &Bound<'_, PyAny>, a: &str, b: &str) -> PyResult<String> {
    dispatch!(ring_mode(ring)?, r => {
        let x = DPElement::parse(r, a).map_err(err)?;
        let y = DPElement::parse(r, b).map_err(err)?;
        Ok(x.mul(&y).to_string())
    })
}

fn to_mat<R: Ring>(r: &R, rows: &[Vec<i64>]) -> PyResult<Mat<R>> {
    if rows.iter().any(|row| row.len() != rows.first().map_or(0, |f| f.len())) {
        return Err(err("rows have different lengths"));
    }
    Ok(Mat::from_i64(r, rows))
}

#[pyfunction]
fn rank(ring: &Bound<'_, PyAny>, rows: Vec<Vec<i64>>) -> PyResult<usize> {
    dispatch!(ring_mode(ring)?, r => Ok(to_mat(r, &rows)?.rank()))
}

/// Basis of the right kernel over `F_p`, one list per basis vector.
#[pyfunction]
fn kernel(p: u64, rows: Vec<Vec<i64>>) -> PyResult<Vec<Vec<u64>>> {
    let f = field(RingMode::from_characteristic(p).map_err(err)?)?;
    Ok(to_mat(&f, &rows)?.kernel().columns())
}

/// Structure of `Z^rows / (column span)`, e.g. `"Z + Z/6"`.
#[pyfunction]
fn cokernel(rows: Vec<Vec<i64>>) -> PyResult<String> {
    let m = to_mat(&Integers, &rows)?;
    Ok(quotient_structure(m.rows(), &m).to_string())
}

fn rep<R: Ring>(r: &R, kind: &str, n: usize) -> PyResult<Rep<R>> {
    Ok(match kind {
        "trivial" => Rep::trivial(r, n),
        "sign" => Rep::sign(r, n),
        "regular" => Rep::regular(r, n),
        "points" => Rep::points(r, n),
        other => return Err(err(format!("unknown module '{other}' (trivial, sign, regular, points)"))),
    })
}

/// `H^t(G, M)` for `G` the Young subgroup with the given blocks (all of
/// `S_n` by default). Returns the structure as text and its dimension.
#[pyfunction]
#[pyo3(signature = (ring, module, n, t, blocks = None))]
fn group_cohomology<'py>(
    py: Python<'py>,
    ring: &Bound<'py, PyAny>,
    module: &str,
    n: usize,
    t: usize,
    blocks: Option<Vec<usize>>,
) -> PyResult<Bound<'py, PyDict>> {
    let group = match blocks {
        Some(b) if b.iter().sum::<usize>() == n => YoungSubgroup::new(&b),
        Some(_) => return Err(err("blocks must sum to n")),
        None => YoungSubgroup::full(n),
    };
    let (structure, dim) = dispatch!(ring_mode(ring)?, r => {
        let m = rep(r, module, n)?;
        let h = py.detach(|| cohomology(&group, &m, t, Method::Auto)).map_err(err)?;
        (h.structure().render(r), h.dim())
    });
    let d = PyDict::new(py);
    d.set_item("structure", structure)?;
    d.set_item("dim", dim)?;
    Ok(d)
}

fn fi_module(f: &PrimeField, desc: &str) -> PyResult<(FIDescriptor, FIModuleHandle<PrimeField>)> {
    let d: FIDescriptor = desc.parse().map_err(err)?;
    let m = FIModuleHandle::from_descriptor(f, &d).map_err(err)?;
    Ok((d, m))
}

/// `[dim H^t(S_n, M_n) for n in 0..=nmax]` together with the multiplication
/// maps checked against the composition law. Over `F_p`.
#[pyfunction]
fn gamma_dims(py: Python<'_>, p: u64, module: &str, t: usize, nmax: usize) -> PyResult<Vec<usize>> {
    let f = field(RingMode::from_characteristic(p).map_err(err)?)?;
    let (_, m) = fi_module(&f, module)?;
    let m = m.with_n_max(nmax);
    let g = py.detach(|| build_gamma(&m, t, nmax)).map_err(err)?;
    Ok(g.dims())
}

/// Periodicity verdict for `n ↦ dim H^t(S_n, M_n)`. `claim` is `"hemmer"`
/// (Specht modules), `"fi"`, or an `(onset, period)` pair; the default picks
/// `hemmer` for Specht modules and `fi` otherwise.
#[pyfunction]
#[pyo3(signature = (p, module, t, nmax, claim = None))]
fn periodicity<'py>(
    py: Python<'py>,
    p: u64,
    module: &str,
    t: usize,
    nmax: usize,
    claim: Option<&Bound<'py, PyAny>>,
) -> PyResult<Bound<'py, PyDict>> {
    let f = field(RingMode::from_characteristic(p).map_err(err)?)?;
    let (desc, m) = fi_module(&f, module)?;
    let m = m.with_n_max(nmax);
    let named = |name: &str| -> PyResult<PeriodicityClaim> {
        match (name, &desc) {
            ("hemmer", FIDescriptor::Specht(mu)) => Ok(hemmer_claim(mu, t, p)),
            ("hemmer", _) => Err(err("hemmer applies to specht modules only")),
            ("fi", _) => Ok(fi_claim(m.meta(), t, p)),
            (other, _) => Err(err(format!("unknown claim '{other}'"))),
        }
    };
    let c = match claim {
        None => named(if matches!(desc, FIDescriptor::Specht(_)) { "hemmer" } else { "fi" })?,
        Some(obj) => match obj.extract::<(usize, usize)>() {
            Ok((onset, period)) if period > 0 => PeriodicityClaim { onset, period },
            Ok(_) => return Err(err("period must be positive")),
            Err(_) => named(&obj.extract::<String>()?)?,
        },
    };
    let report = py.detach(|| periodicity_check(&m, t, c, nmax)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("dims", report.dims.clone())?;
    d.set_item("onset", c.onset)?;
    d.set_item("period", c.period)?;
    d.set_item("verdict", report.verdict.to_string())?;
    d.set_item("first_failure", report.first_failure)?;
    d.set_item("minimal_period", report.minimal_period)?;
    d.set_item("window", report.window)?;
    d.set_item("truncation", report.truncation.clone())?;
    Ok(d)
}

/// Rows `(n, source, target, bijective, predicted)` for restriction
/// `H^t(S_n) → H^t(S_{n−1})` with trivial coefficients.
#[pyfunction]
fn nakaoka(
    py: Python<'_>,
    ring: &Bound<'_, PyAny>,
    t: usize,
    nmax: usize,
) -> PyResult<Vec<(usize, String, String, bool, bool)>> {
    let mode = ring_mode(ring)?;
    let rows = py.detach(|| -> PyResult<_> {
        dispatch!(mode, r => Ok(nakaoka_table(r, t, nmax).map_err(err)?.0))
    })?;
    Ok(rows.into_iter().map(|r| (r.n, r.source, r.target, r.bijective, r.predicted)).collect())
}

/// Runs a verification suite; returns `(criterion, suite, checks, failures, passed)`.
#[pyfunction]
#[pyo3(signature = (suite = "all", seed = None))]
fn verify(py: Python<'_>, suite: &str, seed: Option<u64>) -> PyResult<Vec<(u8, String, usize, Vec<String>, bool)>> {
    let seed = seed.unwrap_or(DEFAULT_SEED);
    let reports = py.detach(|| run_suite(suite, seed)).map_err(err)?;
    Ok(reports
        .into_iter()
        .map(|r| {
            let passed = r.passed();
            (r.criterion, r.suite.to_string(), r.checks, r.failures, passed)
        })
        .collect())
}

#[pymodule]
fn dpcoh(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyElement>()?;
    m.add_class::<PyPresentation>()?;
    m.add_function(wrap_pyfunction!(dp_mul, m)?)?;
    m.add_function(wrap_pyfunction!(rank, m)?)?;
    m.add_function(wrap_pyfunction!(kernel, m)?)?;
    m.add_function(wrap_pyfunction!(cokernel, m)?)?;
    m.add_function(wrap_pyfunction!(group_cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_dims, m)?)?;
    m.add_function(wrap_pyfunction!(periodicity, m)?)?;
    m.add_function(wrap_pyfunction!(nakaoka, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("DEFAULT_SEED", DEFAULT_SEED)?;
    Ok(())
}
