//! Python bindings: the target phase, the regulator scale, point kernels and
//! full amplitude runs from a JSON config.

use std::path::Path;

use infrascat::cli::RunConfig;
use infrascat::kernel::{self, KernelParams, Regulator, DEFAULT_U_GRID};
use infrascat::quadrature::QuadSpec;
use infrascat::scattering;
use infrascat::Vector2;
use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: infrascat::Error) -> PyErr {
    use infrascat::Error::*;
    match e {
        InvalidInput(_) | Config(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// `exp(-i qq / 2)`.
#[pyfunction]
fn target_amplitude(qq: f64) -> Complex64 {
    scattering::target_amplitude(qq)
}

/// Fit `mu_v` for a regulator such as `"sharp:1"` or `"exp:3"`; returns
/// `(mu_v, residual, flagged)`.
#[pyfunction]
#[pyo3(signature = (regulator = "sharp:1"))]
fn fit_mu(regulator: &str) -> PyResult<(f64, f64, bool)> {
    let v: Regulator = regulator.parse().map_err(to_py)?;
    let fit = kernel::fit_mu(&v, &DEFAULT_U_GRID, &QuadSpec::default()).map_err(to_py)?;
    Ok((fit.mu_v, fit.residual, fit.flagged))
}

/// Regularized two-point kernel at `(x0, x1)`.
#[pyfunction]
#[pyo3(signature = (x0, x1, mu_v = None))]
fn w_reg(x0: f64, x1: f64, mu_v: Option<f64>) -> PyResult<Complex64> {
    let params = match mu_v {
        Some(mu) => KernelParams::new(mu).map_err(to_py)?,
        None => KernelParams::canonical(),
    };
    kernel::w_reg_point(Vector2::new(x0, x1), &params).map_err(to_py)
}

/// Run the amplitude pipeline for a JSON config file.
#[pyfunction]
fn amplitude<'py>(py: Python<'py>, config: &str) -> PyResult<Bound<'py, PyDict>> {
    let cfg = RunConfig::load(Path::new(config)).map_err(to_py)?;
    let run = py
        .detach(|| cfg.collision().and_then(|c| scattering::run_amplitude(&c)))
        .map_err(to_py)?;
    let out = PyDict::new(py);
    let samples: Vec<(f64, Complex64, f64)> = run
        .samples
        .iter()
        .map(|s| (s.big_t, s.s_t, s.err))
        .collect();
    out.set_item("samples", samples)?;
    out.set_item("extrapolated", run.series.extrapolated)?;
    out.set_item("target", run.series.target)?;
    out.set_item("gap", run.series.gap())?;
    out.set_item("extrapolation_error", run.series.extrapolation_error)?;
    out.set_item("low_confidence", run.series.low_confidence)?;
    if let Some(a) = run.audit {
        out.set_item("ratio_ln_t_slope", a.ratio_slope)?;
    }
    Ok(out)
}

#[pymodule]
fn infrascat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(target_amplitude, m)?)?;
    m.add_function(wrap_pyfunction!(fit_mu, m)?)?;
    m.add_function(wrap_pyfunction!(w_reg, m)?)?;
    m.add_function(wrap_pyfunction!(amplitude, m)?)?;
    Ok(())
}
