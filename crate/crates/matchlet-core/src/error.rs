//! Error types shared across the crate.

use num_complex::Complex64;
use thiserror::Error;

/// Errors raised while constructing or validating input data.
#[derive(Debug, Error)]
pub enum SequenceError {
    #[error("sequence has no nonzero entries")]
    Empty,
    #[error("decay certificate requires constant > 0 and exponent excess > 0 (got C={constant}, eps={exponent_excess})")]
    InvalidCertificate { constant: f64, exponent_excess: f64 },
    #[error("sample gamma_{index} = {value} violates the decay certificate bound {bound}")]
    CertificateViolated { index: i64, value: f64, bound: f64 },
    #[error("infinite sequence supplied without a decay certificate")]
    MissingCertificate,
}

/// Errors from the polynomial root machinery.
#[derive(Debug, Error)]
pub enum RootError {
    #[error("polynomial has degree 0 after trimming; nothing to solve")]
    DegreeZero,
    #[error("root solver did not converge; {converged} of {total} roots met the residual bound")]
    NoConvergence {
        converged: usize,
        total: usize,
        partial: Vec<Complex64>,
    },
}

/// Rejection reasons for wavelet designs.
#[derive(Debug, Error)]
pub enum DesignError {
    #[error(
        "gamma is not a Riesz sequence: min |Gamma(xi)|^2 = {min_value:.3e} at xi = {at_xi:.6} \
         (roots near the unit circle: {roots}); perturb the roots off the circle and retry",
        roots = format_roots(.on_circle_roots)
    )]
    NotRiesz {
        min_value: f64,
        at_xi: f64,
        on_circle_roots: Vec<Complex64>,
    },
    #[error("dual symbol is unbounded: lower frame bound {lower:.3e} is below tolerance")]
    UnboundedDual { lower: f64 },
    #[error("bell function exceeds 1 in magnitude: |h({at_xi:.6})| = {value:.12}")]
    BellOutOfRange { at_xi: f64, value: f64 },
    #[error("bell endpoint identity failed: {name} = {value:.12}, expected {expected:.12}")]
    BellEndpoint {
        name: &'static str,
        value: f64,
        expected: f64,
    },
    #[error("free-index system for indices ({i}, {j}) is singular; pick indices with different dyadic valuations")]
    SingularFreeSystem { i: usize, j: usize },
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Roots(#[from] RootError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

/// Failure of the quadrature self-check.
#[derive(Debug, Error)]
#[error("quadrature did not converge: coarse = {coarse:.15e}, refined = {refined:.15e}, target tolerance {tolerance:.1e}")]
pub struct QuadratureError {
    pub coarse: f64,
    pub refined: f64,
    pub tolerance: f64,
}

fn format_roots(roots: &[Complex64]) -> String {
    if roots.is_empty() {
        return "none".to_string();
    }
    roots
        .iter()
        .map(|z| {
            if z.im.abs() < 1e-12 {
                format!("{}", z.re)
            } else {
                format!("{}{:+}i", z.re, z.im)
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}
