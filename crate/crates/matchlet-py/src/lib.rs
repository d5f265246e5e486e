//! Python bindings for the wavelet designers.
//!
//! Exposes the two design paths and the root/feasibility helpers. Matched
//! wavelets accept real or complex data as lists of floats or complex
//! numbers; the band-limited designer takes real data indexed from zero.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use matchlet_core::matched::{design_matched, MatchedWavelet};
use matchlet_core::meyer::{
    build_meyer, check_admissibility, project_feasible, solve_h_coefficients,
    MeyerTargetSequence, MeyerWaveletModel,
};
use matchlet_core::quadrature::QuadratureSpec;
use matchlet_core::roots::{perturb_roots as perturb_impl, polynomial_roots, unit_circle_check};
use matchlet_core::sequence::DataSequence;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn data_sequence(gamma: Vec<Complex64>, offset: i64) -> PyResult<DataSequence> {
    DataSequence::finite(offset, gamma).map_err(value_err)
}

/// A wavelet matching data on the half-integer lattice `k + 1/2`.
#[pyclass(name = "MatchedWavelet")]
struct PyMatchedWavelet {
    inner: MatchedWavelet,
}

#[pymethods]
impl PyMatchedWavelet {
    /// (lower, upper) Riesz bounds: the extrema of `|Gamma|^2`.
    fn frame_bounds(&self) -> (f64, f64) {
        (self.inner.bounds().lower, self.inner.bounds().upper)
    }

    /// Time-domain value as a complex number.
    fn eval(&self, t: f64) -> PyResult<Complex64> {
        self.inner.eval_time(t).map_err(runtime_err)
    }

    /// Time-domain value for real data.
    fn eval_real(&self, t: f64) -> PyResult<f64> {
        self.inner.eval_time_real(t).map_err(runtime_err)
    }

    /// `sum_k |psihat(xi + 2 pi k)|^2`.
    fn frame_function(&self, xi: f64) -> f64 {
        self.inner.frame_function(xi)
    }

    /// `max_{|n| <= count} |psi(n + 1/2) - gamma_n|`.
    fn interpolation_residual(&self, count: i64) -> PyResult<f64> {
        Ok(self
            .inner
            .verify_interpolation(count, 1e-8)
            .map_err(runtime_err)?
            .max_abs)
    }

    /// Eigenvalue range (min, max) of the `(2K+1)` Gram section.
    fn gram_eigen_interval(&self, half_width: usize) -> PyResult<(f64, f64)> {
        let e = self
            .inner
            .gram_eigen_check(half_width)
            .map_err(runtime_err)?;
        Ok((e.min, e.max))
    }

    /// Uniform samples [(t, value), ...] with endpoints inclusive.
    fn sample(&self, t_min: f64, t_max: f64, n_points: usize) -> PyResult<Vec<(f64, Complex64)>> {
        let mut out = Vec::with_capacity(n_points);
        for i in 0..n_points {
            let t = if n_points == 1 {
                t_min
            } else {
                t_min + (t_max - t_min) * i as f64 / (n_points - 1) as f64
            };
            out.push((t, self.inner.eval_time(t).map_err(runtime_err)?));
        }
        Ok(out)
    }
}

/// An orthonormal band-limited wavelet matching data on `1/2 + 3k`.
#[pyclass(name = "MeyerWavelet")]
struct PyMeyerWavelet {
    inner: MeyerWaveletModel,
    lhs: [f64; 3],
    pass: [bool; 3],
}

#[pymethods]
impl PyMeyerWavelet {
    /// Cosine coefficients of the bell profile.
    fn h_coefficients(&self) -> Vec<f64> {
        self.inner.bell().values.clone()
    }

    /// Bell profile value.
    fn h(&self, xi: f64) -> f64 {
        self.inner.h(xi)
    }

    /// Time-domain value.
    fn eval(&self, t: f64) -> PyResult<f64> {
        self.inner.eval_psi_time(t).map_err(runtime_err)
    }

    /// Lattice value at `1/2 + 3k` via the reduced bell integral.
    fn lattice(&self, k: u64) -> PyResult<f64> {
        self.inner.eval_lattice(k).map_err(runtime_err)
    }

    /// The three admissibility sums (targets 1, sqrt(2)/2, <= 1).
    fn admissibility(&self) -> ([f64; 3], [bool; 3]) {
        (self.lhs, self.pass)
    }

    /// Scaling-function transform value.
    fn scaling_hat(&self, xi: f64) -> f64 {
        self.inner.scaling_hat(xi)
    }

    /// `sum_k scaling_hat(xi + 2 pi k)^2`.
    fn partition_of_unity(&self, xi: f64) -> f64 {
        self.inner.partition_of_unity(xi)
    }
}

/// Designs a matched wavelet from data on the half-integer lattice.
#[pyfunction]
#[pyo3(signature = (gamma, offset = 0))]
fn design_matched_wavelet(gamma: Vec<Complex64>, offset: i64) -> PyResult<PyMatchedWavelet> {
    let seq = data_sequence(gamma, offset)?;
    let inner = design_matched(&seq).map_err(value_err)?;
    Ok(PyMatchedWavelet { inner })
}

/// Designs the band-limited wavelet from real data indexed from zero.
#[pyfunction]
#[pyo3(signature = (gamma, n_max = None))]
fn design_meyer_wavelet(gamma: Vec<f64>, n_max: Option<usize>) -> PyResult<PyMeyerWavelet> {
    let seq = MeyerTargetSequence::finite(gamma);
    let n_max = n_max
        .unwrap_or_else(|| (2 * (seq.finite_support().unwrap_or(1) as usize + 1)).max(2));
    let report = check_admissibility(&seq, n_max, 1e-12).map_err(value_err)?;
    if !report.pass[0] || !report.pass[1] {
        return Err(PyValueError::new_err(format!(
            "data violates the lattice feasibility conditions: lhs = {:?}",
            report.lhs
        )));
    }
    let bell = solve_h_coefficients(&seq, n_max).map_err(value_err)?;
    let inner = build_meyer(bell, seq, QuadratureSpec::default()).map_err(value_err)?;
    Ok(PyMeyerWavelet {
        inner,
        lhs: report.lhs,
        pass: report.pass,
    })
}

/// Roots of the data polynomial and their distance to the unit circle.
#[pyfunction]
#[pyo3(signature = (gamma, offset = 0))]
fn data_polynomial_roots(gamma: Vec<Complex64>, offset: i64) -> PyResult<(Vec<Complex64>, f64)> {
    let seq = data_sequence(gamma, offset)?;
    let rs = polynomial_roots(&seq).map_err(value_err)?;
    Ok((rs.roots, rs.min_unit_circle_distance))
}

/// Moves roots near the unit circle outward; returns the adjusted data.
#[pyfunction]
#[pyo3(signature = (gamma, delta, offset = 0))]
fn perturb_data_roots(gamma: Vec<Complex64>, delta: f64, offset: i64) -> PyResult<Vec<Complex64>> {
    let seq = data_sequence(gamma, offset)?;
    let adjusted = perturb_impl(&seq, delta).map_err(value_err)?;
    let rs = polynomial_roots(&adjusted).map_err(value_err)?;
    debug_assert!(unit_circle_check(&rs, delta * (1.0 - 1e-9)).pass);
    let (lo, hi) = adjusted.support().expect("finite");
    Ok((lo..=hi).map(|k| adjusted.value(k)).collect())
}

/// Adjusts two free entries so the lattice feasibility conditions hold.
#[pyfunction]
#[pyo3(signature = (desired, free = (0, 1)))]
fn project_feasible_data(desired: Vec<f64>, free: (usize, usize)) -> PyResult<Vec<f64>> {
    let seq = MeyerTargetSequence::finite(desired);
    let adjusted = project_feasible(&seq, free).map_err(value_err)?;
    let top = adjusted.finite_support().unwrap_or(0);
    Ok((0..=top).map(|k| adjusted.value(k)).collect())
}

#[pymodule]
fn matchlet(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatchedWavelet>()?;
    m.add_class::<PyMeyerWavelet>()?;
    m.add_function(wrap_pyfunction!(design_matched_wavelet, m)?)?;
    m.add_function(wrap_pyfunction!(design_meyer_wavelet, m)?)?;
    m.add_function(wrap_pyfunction!(data_polynomial_roots, m)?)?;
    m.add_function(wrap_pyfunction!(perturb_data_roots, m)?)?;
    m.add_function(wrap_pyfunction!(project_feasible_data, m)?)?;
    Ok(())
}
