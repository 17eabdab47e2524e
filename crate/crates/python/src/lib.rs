//! Python bindings: theta evaluation, Θ_Max, the bound chain, Arakelov
//! constants, genus-2 Jacobian arithmetic and the report pipeline.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyTuple;
use rug::{Float, Rational};

use tvbound::arakelov::{faltings_height_gamma as fal_gamma, CurvePreset};
use tvbound::bounds::{self, LogScaledReal};
use tvbound::jacobian::{self, HyperellipticCurve, Jacobian, RationalDivisor, Rationals, Valuation};
use tvbound::report;
use tvbound::theta::{self as th, PeriodMatrix as CorePeriodMatrix, PrecisionConfig, ThetaPoint};
use tvbound::theta_max::{self, OptimizerConfig};
use tvbound::Error;

fn to_py(e: Error) -> PyErr {
    match report::exit_code(&e) {
        2 => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn precision(bits: u32) -> PyResult<PrecisionConfig> {
    PrecisionConfig::with_bits(bits).map_err(to_py)
}

fn log10_of(x: &LogScaledReal) -> Option<f64> {
    x.log10().map(|v| v.to_f64())
}

/// A symmetric period matrix with positive definite imaginary part.
#[pyclass(name = "PeriodMatrix", module = "pytvbound", from_py_object)]
#[derive(Clone)]
struct PyPeriodMatrix {
    inner: CorePeriodMatrix,
}

#[pymethods]
impl PyPeriodMatrix {
    /// Row-major entries as Python complex numbers.
    #[new]
    fn new(g: usize, entries: Vec<(f64, f64)>) -> PyResult<Self> {
        Ok(PyPeriodMatrix { inner: CorePeriodMatrix::from_f64(g, &entries).map_err(to_py)? })
    }

    /// Row-major entries as `(re, im)` decimal strings, parsed at `bits`.
    #[staticmethod]
    fn from_strings(g: usize, entries: Vec<(String, String)>, bits: u32) -> PyResult<Self> {
        Ok(PyPeriodMatrix { inner: CorePeriodMatrix::parse(g, &entries, bits).map_err(to_py)? })
    }

    #[staticmethod]
    #[pyo3(signature = (bits=128))]
    fn bost_mestre(bits: u32) -> Self {
        PyPeriodMatrix { inner: CorePeriodMatrix::bost_mestre(bits) }
    }

    #[getter]
    fn genus(&self) -> usize {
        self.inner.genus()
    }
}

fn point(z: Vec<(f64, f64)>) -> PyResult<ThetaPoint> {
    ThetaPoint::from_f64(&z).map_err(to_py)
}

/// θ(z, τ) as a complex number; `z` is a list of `(re, im)` pairs.
#[pyfunction]
#[pyo3(signature = (tau, z, bits=53))]
fn theta(tau: &PyPeriodMatrix, z: Vec<(f64, f64)>, bits: u32) -> PyResult<(f64, f64)> {
    let v = th::theta(&tau.inner, &point(z)?, &precision(bits)?).map_err(to_py)?;
    Ok((v.re.to_f64(), v.im.to_f64()))
}

#[pyfunction]
#[pyo3(signature = (tau, z, bits=53))]
fn theta_norm(tau: &PyPeriodMatrix, z: Vec<(f64, f64)>, bits: u32) -> PyResult<String> {
    let v = th::theta_norm(&tau.inner, &point(z)?, &precision(bits)?).map_err(to_py)?;
    Ok(v.to_string())
}

/// Returns `(estimate, 2^{-g/2})`.
#[pyfunction]
#[pyo3(signature = (tau, samples=100_000))]
fn normalization_check(tau: &PyPeriodMatrix, samples: usize) -> PyResult<(f64, f64)> {
    th::theta_norm_normalization_check(&tau.inner, samples, &PrecisionConfig::double()).map_err(to_py)
}

/// Returns `(value, argmax_coords)` with the value as a decimal string.
#[pyfunction]
#[pyo3(signature = (tau, bits=128, grid=None))]
fn theta_max_value(
    py: Python<'_>,
    tau: &PyPeriodMatrix,
    bits: u32,
    grid: Option<usize>,
) -> PyResult<(String, Vec<f64>)> {
    let g = tau.inner.genus();
    let mut ocfg = OptimizerConfig::for_precision(g, bits);
    if let Some(n) = grid {
        ocfg.grid_points_per_dim = n;
    }
    let cfg = precision(bits)?;
    let tau = tau.inner.clone();
    let r = py
        .detach(move || theta_max::theta_max(&tau, &ocfg, &cfg))
        .map_err(to_py)?;
    Ok((r.value.to_string(), r.argmax_coords))
}

fn py_int<'py>(py: Python<'py>, s: String) -> PyResult<Bound<'py, PyAny>> {
    py.import("builtins")?.getattr("int")?.call1((s,))
}

#[pyfunction]
fn bu<'py>(py: Python<'py>, m: u64, g: u32) -> PyResult<Bound<'py, PyAny>> {
    py_int(py, bounds::bu(m, g).map_err(to_py)?.to_string())
}

/// log₁₀ of `L_{n,m}` for genus `g`.
#[pyfunction]
fn l_bound_log10(n: u64, m: u64, g: u32) -> PyResult<Option<f64>> {
    let l = bounds::l_bound(&LogScaledReal::from_u64(n), m, g).map_err(to_py)?;
    Ok(log10_of(&l))
}

#[pyfunction]
fn h_bound_log10(p: u64, g: u32, deg_k0: u32) -> PyResult<Option<f64>> {
    Ok(log10_of(&bounds::h_bound(p, g, deg_k0).map_err(to_py)?))
}

/// `terms` are `(a, e)` with `a` a rational string in `(0,1)`.
#[pyfunction]
#[pyo3(signature = (terms, constant="0", bits=128))]
fn faltings_height_gamma(terms: Vec<(String, i64)>, constant: &str, bits: u32) -> PyResult<String> {
    let parsed = terms
        .into_iter()
        .map(|(a, e)| {
            a.parse::<Rational>()
                .map(|a| (a, e))
                .map_err(|err| PyValueError::new_err(format!("bad rational {a:?}: {err}")))
        })
        .collect::<PyResult<Vec<_>>>()?;
    let c = Float::parse(constant)
        .map(|p| Float::with_val(bits, p))
        .map_err(|e| PyValueError::new_err(format!("bad constant {constant:?}: {e}")))?;
    Ok(fal_gamma(&parsed, &c, bits).map_err(to_py)?.to_string())
}

#[pyfunction]
#[pyo3(signature = (bits=128))]
fn bost_mestre_h_fal(bits: u32) -> PyResult<String> {
    Ok(CurvePreset::bost_mestre(bits).h_fal(bits).map_err(to_py)?.to_string())
}

type DivisorTuple = (Vec<String>, Vec<String>);

/// Jacobian of `z² = f(t)` over the rationals; `f` is a monic quintic given
/// constant term first. Classes are `(u, v)` tuples of rational strings.
#[pyclass(name = "Jacobian", module = "pytvbound")]
struct PyJacobian {
    curve: HyperellipticCurve,
    jac: Jacobian<Rationals>,
}

impl PyJacobian {
    fn parse(&self, d: DivisorTuple) -> PyResult<RationalDivisor> {
        let d = RationalDivisor::parse(&d.0, &d.1).map_err(to_py)?;
        if !self.jac.is_valid(&d) {
            return Err(PyValueError::new_err("not a reduced Mumford pair on this curve"));
        }
        Ok(d)
    }
}

#[pymethods]
impl PyJacobian {
    #[new]
    fn new(f: Vec<i64>) -> PyResult<Self> {
        let curve = HyperellipticCurve::new(f).map_err(to_py)?;
        let jac = Jacobian::rational(&curve);
        Ok(PyJacobian { curve, jac })
    }

    #[getter]
    fn disc(&self) -> String {
        self.curve.disc().to_string()
    }

    fn zero(&self) -> DivisorTuple {
        self.jac.zero().to_strings()
    }

    /// `[(x, y) − ∞]`.
    fn point(&self, x: &str, y: &str) -> PyResult<DivisorTuple> {
        let parse = |s: &str| s.parse::<Rational>().map_err(|e| PyValueError::new_err(format!("{s:?}: {e}")));
        Ok(self.jac.point(parse(x)?, parse(y)?).map_err(to_py)?.to_strings())
    }

    fn add(&self, a: DivisorTuple, b: DivisorTuple) -> PyResult<DivisorTuple> {
        Ok(self.jac.add(&self.parse(a)?, &self.parse(b)?).map_err(to_py)?.to_strings())
    }

    fn neg(&self, a: DivisorTuple) -> PyResult<DivisorTuple> {
        Ok(self.jac.neg(&self.parse(a)?).to_strings())
    }

    fn scalar_mul(&self, n: i64, a: DivisorTuple) -> PyResult<DivisorTuple> {
        Ok(self.jac.scalar_mul(n, &self.parse(a)?).map_err(to_py)?.to_strings())
    }

    #[pyo3(signature = (a, search_bound=100))]
    fn order_of(&self, a: DivisorTuple, search_bound: u64) -> PyResult<Option<u64>> {
        self.jac.order_of(&self.parse(a)?, search_bound).map_err(to_py)
    }

    fn reduce_mod(&self, a: DivisorTuple, p: u64, j: u32) -> PyResult<(Vec<u64>, Vec<u64>)> {
        let r = jacobian::reduce_mod(&self.curve, &self.parse(a)?, p, j).map_err(to_py)?;
        Ok((r.u, r.v))
    }

    fn on_curve_mod(&self, u: Vec<u64>, v: Vec<u64>, p: u64, j: u32) -> PyResult<bool> {
        let d = jacobian::MumfordDivisor { u, v };
        jacobian::on_curve_mod(&self.curve, &d, p, j).map_err(to_py)
    }

    /// `"infinite"`, `">=j"` or the exact valuation as a string.
    fn vp_distance(&self, a: DivisorTuple, p: u64, jmax: u32) -> PyResult<String> {
        let d = jacobian::vp_distance(&self.curve, &self.parse(a)?, p, jmax).map_err(to_py)?;
        Ok(match d.vp {
            Valuation::Infinite => "infinite".into(),
            Valuation::AtLeast(j) => format!(">={j}"),
            Valuation::Exact(j) => j.to_string(),
        })
    }

    fn enumerate_points_mod<'py>(&self, py: Python<'py>, p: u64, j: u32) -> PyResult<Vec<Bound<'py, PyTuple>>> {
        jacobian::enumerate_curve_points_mod(&self.curve, p, j)
            .map_err(to_py)?
            .into_iter()
            .map(|d| PyTuple::new(py, [d.u, d.v]))
            .collect()
    }
}

/// Runs the pipeline on a JSON config and returns the canonical report text.
#[pyfunction]
fn run(py: Python<'_>, config_json: &str) -> PyResult<String> {
    let cfg = report::RunConfig::from_json(config_json).map_err(to_py)?;
    let rep = py.detach(move || report::run(&cfg)).map_err(to_py)?;
    Ok(report::serialize_report(&rep))
}

#[pymodule]
fn pytvbound(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPeriodMatrix>()?;
    m.add_class::<PyJacobian>()?;
    m.add_function(wrap_pyfunction!(theta, m)?)?;
    m.add_function(wrap_pyfunction!(theta_norm, m)?)?;
    m.add_function(wrap_pyfunction!(normalization_check, m)?)?;
    m.add_function(wrap_pyfunction!(theta_max_value, m)?)?;
    m.add_function(wrap_pyfunction!(bu, m)?)?;
    m.add_function(wrap_pyfunction!(l_bound_log10, m)?)?;
    m.add_function(wrap_pyfunction!(h_bound_log10, m)?)?;
    m.add_function(wrap_pyfunction!(faltings_height_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(bost_mestre_h_fal, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
