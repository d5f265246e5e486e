//! Shared panel quadrature engine.
//!
//! Every integral reported by this crate goes through [`QuadratureSpec`], a
//! composite Gauss-Legendre rule with a built-in convergence self-check:
//! the integral is evaluated twice, once at the configured panel count and
//! once with the panel count multiplied by the refinement factor. The
//! difference is the reported error estimate, and exceeding the target
//! tolerance is an error rather than a silent inaccuracy.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::QuadratureError;

/// Configuration for the composite Gauss-Legendre rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureSpec {
    /// Panels per integration band.
    pub panels_per_band: usize,
    /// Gauss-Legendre nodes per panel.
    pub nodes_per_panel: usize,
    /// Panel multiplier used for the convergence self-check.
    pub refinement_factor: usize,
    /// Largest admissible difference between the coarse and refined values.
    pub target_tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            panels_per_band: 8,
            nodes_per_panel: 32,
            refinement_factor: 2,
            target_tolerance: 1e-10,
        }
    }
}

/// An integral value together with its refinement-based error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Estimate<T> {
    pub value: T,
    pub error_estimate: f64,
}

impl QuadratureSpec {
    /// Integrates `f` over `[a, b]`, enforcing the refinement self-check.
    pub fn integrate<F>(&self, f: F, a: f64, b: f64) -> Result<Estimate<f64>, QuadratureError>
    where
        F: Fn(f64) -> f64,
    {
        let coarse = panel_sum(&f, a, b, self.panels_per_band, self.nodes_per_panel);
        let refined = panel_sum(
            &f,
            a,
            b,
            self.panels_per_band * self.refinement_factor,
            self.nodes_per_panel,
        );
        let err = (refined - coarse).abs();
        if err > self.target_tolerance {
            return Err(QuadratureError {
                coarse,
                refined,
                tolerance: self.target_tolerance,
            });
        }
        Ok(Estimate {
            value: refined,
            error_estimate: err,
        })
    }

    /// Complex-valued counterpart of [`QuadratureSpec::integrate`].
    pub fn integrate_complex<F>(
        &self,
        f: F,
        a: f64,
        b: f64,
    ) -> Result<Estimate<Complex64>, QuadratureError>
    where
        F: Fn(f64) -> Complex64,
    {
        let coarse = panel_sum_complex(&f, a, b, self.panels_per_band, self.nodes_per_panel);
        let refined = panel_sum_complex(
            &f,
            a,
            b,
            self.panels_per_band * self.refinement_factor,
            self.nodes_per_panel,
        );
        let err = (refined - coarse).norm();
        if err > self.target_tolerance {
            return Err(QuadratureError {
                coarse: coarse.re,
                refined: refined.re,
                tolerance: self.target_tolerance,
            });
        }
        Ok(Estimate {
            value: refined,
            error_estimate: err,
        })
    }

    /// Integrates over a union of intervals, summing value and estimates.
    pub fn integrate_intervals<F>(
        &self,
        f: F,
        intervals: &[(f64, f64)],
    ) -> Result<Estimate<f64>, QuadratureError>
    where
        F: Fn(f64) -> f64,
    {
        let mut value = 0.0;
        let mut err = 0.0;
        for &(a, b) in intervals {
            let part = self.integrate(&f, a, b)?;
            value += part.value;
            err += part.error_estimate;
        }
        Ok(Estimate {
            value,
            error_estimate: err,
        })
    }

    /// Complex version of [`QuadratureSpec::integrate_intervals`].
    pub fn integrate_intervals_complex<F>(
        &self,
        f: F,
        intervals: &[(f64, f64)],
    ) -> Result<Estimate<Complex64>, QuadratureError>
    where
        F: Fn(f64) -> Complex64,
    {
        let mut value = Complex64::new(0.0, 0.0);
        let mut err = 0.0;
        for &(a, b) in intervals {
            let part = self.integrate_complex(&f, a, b)?;
            value += part.value;
            err += part.error_estimate;
        }
        Ok(Estimate {
            value,
            error_estimate: err,
        })
    }
}

fn panel_sum<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize, nodes: usize) -> f64 {
    let rule = legendre_rule(nodes);
    let width = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * width;
        let mid = lo + 0.5 * width;
        let half = 0.5 * width;
        for (x, w) in rule.0.iter().zip(rule.1.iter()) {
            total += w * half * f(mid + half * x);
        }
    }
    total
}

fn panel_sum_complex<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    panels: usize,
    nodes: usize,
) -> Complex64 {
    let rule = legendre_rule(nodes);
    let width = (b - a) / panels as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = a + p as f64 * width;
        let mid = lo + 0.5 * width;
        let half = 0.5 * width;
        for (x, w) in rule.0.iter().zip(rule.1.iter()) {
            total += f(mid + half * x) * (w * half);
        }
    }
    total
}

type NodeWeights = (Vec<f64>, Vec<f64>);

/// Gauss-Legendre nodes and weights on [-1, 1], cached per node count.
fn legendre_rule(n: usize) -> NodeWeights {
    static CACHE: OnceLock<Mutex<HashMap<usize, NodeWeights>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("legendre cache poisoned");
    guard.entry(n).or_insert_with(|| compute_rule(n)).clone()
}

/// Newton iteration on P_n; nodes are roots, weights 2 / ((1-x^2) P_n'(x)^2).
fn compute_rule(n: usize) -> NodeWeights {
    assert!(n >= 2, "need at least 2 nodes");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi-style initial guess, accurate enough for Newton.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_value_deriv(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_value_deriv(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_value_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}
