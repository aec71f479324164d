//! Python bindings for the workquench library.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use workquench::ed::{work_distribution, ChainSpec};
use workquench::luttinger::{self, ModeSolverOptions};
use workquench::workstats;
use workquench::{Beta, WqError};

fn err(e: WqError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Quench protocol: linear ramp of the anisotropy over tau_q, starting from
/// a ground or thermal state of the free chain.
#[pyclass(name = "QuenchProtocol")]
#[derive(Clone)]
struct PyProtocol {
    inner: workquench::QuenchProtocol,
}

#[pymethods]
impl PyProtocol {
    #[new]
    #[pyo3(signature = (j, delta_f, tau_q, beta=None))]
    fn new(j: f64, delta_f: f64, tau_q: f64, beta: Option<f64>) -> PyResult<Self> {
        let beta = match beta {
            Some(b) => Beta::Finite(b),
            None => Beta::Infinite,
        };
        Ok(Self {
            inner: workquench::QuenchProtocol::new(j, delta_f, tau_q, beta).map_err(err)?,
        })
    }

    #[getter]
    fn j(&self) -> f64 {
        self.inner.j
    }

    #[getter]
    fn delta_f(&self) -> f64 {
        self.inner.delta_f
    }

    #[getter]
    fn tau_q(&self) -> f64 {
        self.inner.tau_q
    }

    #[getter]
    fn beta(&self) -> Option<f64> {
        match self.inner.beta {
            Beta::Finite(b) => Some(b),
            Beta::Infinite => None,
        }
    }

    fn delta_at(&self, t: f64) -> f64 {
        self.inner.delta_at(t)
    }

    fn __repr__(&self) -> String {
        format!(
            "QuenchProtocol(j={}, delta_f={}, tau_q={}, beta={:?})",
            self.inner.j,
            self.inner.delta_f,
            self.inner.tau_q,
            self.beta()
        )
    }
}

/// Luttinger parameters (v, K) of the XXZ chain at anisotropy delta.
#[pyfunction]
fn luttinger_params(j: f64, delta: f64) -> PyResult<(f64, f64)> {
    let lp = luttinger::luttinger_params(j, delta).map_err(err)?;
    Ok((lp.v, lp.k))
}

/// Solve one Bogoliubov mode; returns a dict with x1, x2, y1, y2, p_q.
#[pyfunction]
fn solve_mode(py: Python<'_>, q: f64, protocol: &PyProtocol) -> PyResult<PyObject> {
    let m = luttinger::solve_mode(q, &protocol.inner, &ModeSolverOptions::default())
        .map_err(err)?;
    let d = pyo3::types::PyDict::new(py);
    d.set_item("q", m.q)?;
    d.set_item("x1", m.x1)?;
    d.set_item("x2", m.x2)?;
    d.set_item("y1", m.y1)?;
    d.set_item("y2", m.y2)?;
    d.set_item("p_q", m.p_q)?;
    Ok(d.into())
}

/// Asymptotic excitation probability p0 * sinc^2(J q tau_Q).
#[pyfunction]
fn pq_asymptotic(q: f64, protocol: &PyProtocol) -> PyResult<f64> {
    luttinger::pq_asymptotic(q, &protocol.inner).map_err(err)
}

/// Characteristic function of work on a u-grid (analytic, continuum modes).
#[pyfunction]
#[pyo3(signature = (u_grid, protocol, n, alpha))]
fn cfw(u_grid: Vec<f64>, protocol: &PyProtocol, n: usize, alpha: f64) -> PyResult<Vec<Complex64>> {
    let source = workstats::ModeSource::Ode(ModeSolverOptions::default());
    let curve = if protocol.inner.beta.is_finite() {
        workstats::cfw_thermal(
            &u_grid,
            &protocol.inner,
            n,
            alpha,
            &source,
            workstats::ModeSet::Continuum,
        )
    } else {
        workstats::cfw_ground(
            &u_grid,
            &protocol.inner,
            n,
            alpha,
            &source,
            workstats::ModeSet::Continuum,
        )
    }
    .map_err(err)?;
    Ok(curve.values)
}

/// Closed-form work cumulants [k1, k2, k3].
#[pyfunction]
fn cumulants(protocol: &PyProtocol, alpha: f64, n: usize) -> PyResult<Vec<f64>> {
    let set = if protocol.inner.beta.is_finite() {
        workstats::cumulants_thermal(
            &protocol.inner,
            alpha,
            n,
            &workstats::ModeSource::Ode(ModeSolverOptions::default()),
        )
    } else {
        workstats::cumulant_integrals_ground(&protocol.inner, alpha, n)
    }
    .map_err(err)?;
    Ok(set.kappas)
}

/// Exact-diagonalization work distribution as a list of (W, probability).
#[pyfunction]
fn ed_work_distribution(n: usize, protocol: &PyProtocol) -> PyResult<Vec<(f64, f64)>> {
    let wd = work_distribution(ChainSpec::zero_sector(n).map_err(err)?, &protocol.inner)
        .map_err(err)?;
    Ok(wd.entries)
}

/// Power-law fit; returns (exponent, log_correction, r_squared).
#[pyfunction]
#[pyo3(signature = (points, detect_log=true))]
fn fit_scaling(points: Vec<(f64, f64)>, detect_log: bool) -> PyResult<(f64, bool, f64)> {
    let fit = workstats::fit_scaling(&points, detect_log).map_err(err)?;
    Ok((fit.exponent, fit.log_correction, fit.r_squared))
}

/// Cutoff-regulated master integral; returns (value, scaling_exponent, log_flag).
#[pyfunction]
fn master_integral(
    n: u32,
    m: u32,
    protocol: &PyProtocol,
    alpha: f64,
) -> PyResult<(f64, i32, bool)> {
    let mi = workstats::master_integral(n, m, &protocol.inner, alpha).map_err(err)?;
    Ok((mi.value, mi.tag.exponent, mi.tag.log_correction))
}

#[pymodule]
fn workquench_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyProtocol>()?;
    m.add_function(wrap_pyfunction!(luttinger_params, m)?)?;
    m.add_function(wrap_pyfunction!(solve_mode, m)?)?;
    m.add_function(wrap_pyfunction!(pq_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(cfw, m)?)?;
    m.add_function(wrap_pyfunction!(cumulants, m)?)?;
    m.add_function(wrap_pyfunction!(ed_work_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(fit_scaling, m)?)?;
    m.add_function(wrap_pyfunction!(master_integral, m)?)?;
    Ok(())
}
