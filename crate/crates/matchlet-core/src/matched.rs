//! Matched wavelets on the half-integer lattice.
//!
//! Given data `gamma_k` with symbol `Gamma` bounded away from zero, the
//! wavelet `psi(x) = sum_k gamma_k psiI(x - k)` satisfies
//! `psi(n + 1/2) = gamma_n` and generates a Riesz basis with bounds equal to
//! the extrema of `|Gamma|^2`. In frequency, `psihat(xi) = Gamma(-xi)
//! psiIhat(xi)` lives on the backbone band `pi <= |xi| < 2 pi`, so every
//! evaluation below goes through compactly supported frequency integrals.
//!
//! The shift sign is chosen as `x - k`: with the backbone's delta property
//! this reproduces `psi(k + 1/2) = gamma_k` exactly, and `|Gamma(-xi)|` has
//! the same extrema as `|Gamma(xi)|`, so the bounds are unaffected.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::cardinal::{CardinalSystem, ShannonCardinal};
use crate::error::{DesignError, QuadratureError};
use crate::quadrature::QuadratureSpec;
use crate::roots::{polynomial_roots, unit_circle_check};
use crate::sequence::DataSequence;
use crate::symbol::{
    compute_frame_bounds, dual_symbol_coefficients, symbol_from_sequence, FrameBounds,
    SymbolPolynomial,
};

use std::f64::consts::PI;
use std::sync::Arc;

/// Lower-bound tolerance below which a design is rejected as not Riesz.
pub const POSITIVITY_TOL: f64 = 1e-10;

/// A designed matched wavelet with its verification surface.
#[derive(Clone)]
pub struct MatchedWavelet {
    gamma: DataSequence,
    symbol: SymbolPolynomial,
    bounds: FrameBounds,
    cardinal: Arc<dyn CardinalSystem>,
    quadrature: QuadratureSpec,
}

impl std::fmt::Debug for MatchedWavelet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MatchedWavelet")
            .field("gamma", &self.gamma)
            .field("bounds", &self.bounds)
            .finish_non_exhaustive()
    }
}


/// Per-point interpolation residuals.
#[derive(Debug, Clone)]
pub struct ResidualReport {
    pub max_abs: f64,
    pub worst_index: i64,
    pub per_point: Vec<(i64, f64)>,
    pub tolerance: f64,
    pub pass: bool,
}

/// Extreme eigenvalues of the finite-section Gram matrix.
#[derive(Debug, Clone, Copy)]
pub struct EigenInterval {
    pub min: f64,
    pub max: f64,
    pub size: usize,
}

/// Residual of reassembling the backbone wavelet from dual coefficients.
#[derive(Debug, Clone)]
pub struct ReconstructionReport {
    pub sup_residual: f64,
    pub count: usize,
    pub dual_residual_sup: f64,
}

/// Designs the matched wavelet, rejecting data whose symbol vanishes.
pub fn design_matched(gamma: &DataSequence) -> Result<MatchedWavelet, DesignError> {
    design_matched_with(gamma, QuadratureSpec::default(), Arc::new(ShannonCardinal))
}

pub fn design_matched_with(
    gamma: &DataSequence,
    quadrature: QuadratureSpec,
    cardinal: Arc<dyn CardinalSystem>,
) -> Result<MatchedWavelet, DesignError> {
    let symbol = symbol_from_sequence(gamma, quadrature.target_tolerance)?;
    let bounds = compute_frame_bounds(&symbol);
    if !bounds.is_riesz(POSITIVITY_TOL) {
        let on_circle_roots = match polynomial_roots(gamma) {
            Ok(rs) => unit_circle_check(&rs, 1e-6).offenders,
            Err(_) => Vec::new(),
        };
        return Err(DesignError::NotRiesz {
            min_value: bounds.lower,
            at_xi: bounds.argmin,
            on_circle_roots,
        });
    }
    Ok(MatchedWavelet {
        gamma: gamma.clone(),
        symbol,
        bounds,
        cardinal,
        quadrature,
    })
}

impl MatchedWavelet {
    pub fn gamma(&self) -> &DataSequence {
        &self.gamma
    }

    pub fn symbol(&self) -> &SymbolPolynomial {
        &self.symbol
    }

    pub fn bounds(&self) -> &FrameBounds {
        &self.bounds
    }

    pub fn quadrature(&self) -> &QuadratureSpec {
        &self.quadrature
    }

    pub fn is_real(&self) -> bool {
        self.symbol.is_real()
    }

    /// Frequency-domain form `Gamma(-xi) psiIhat(xi)`.
    pub fn wavelet_hat(&self, xi: f64) -> Complex64 {
        let base = self.cardinal.wavelet_hat(xi);
        if base.norm_sqr() == 0.0 {
            return base;
        }
        self.symbol.eval(-xi) * base
    }

    /// Time-domain value by frequency quadrature over the backbone band.
    pub fn eval_time(&self, t: f64) -> Result<Complex64, QuadratureError> {
        let (lo, hi) = self.cardinal.wavelet_band();
        let est = self.quadrature.integrate_intervals_complex(
            |xi| self.wavelet_hat(xi) * Complex64::new(0.0, xi * t).exp(),
            &[(-hi, -lo), (lo, hi)],
        )?;
        Ok(est.value / (2.0 * PI))
    }

    /// Real-part evaluation for real data.
    pub fn eval_time_real(&self, t: f64) -> Result<f64, QuadratureError> {
        Ok(self.eval_time(t)?.re)
    }

    /// Direct shift-series evaluation, the slow cross-check for `eval_time`.
    pub fn eval_time_series(&self, t: f64, terms: i64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let (lo, hi) = self.gamma.support().unwrap_or((-terms, terms));
        for k in lo.max(-terms)..=hi.min(terms) {
            acc += self.gamma.value(k) * self.cardinal.wavelet(t - k as f64);
        }
        acc
    }

    /// `max_{|n| <= count} |psi(n + 1/2) - gamma_n|`.
    pub fn verify_interpolation(
        &self,
        count: i64,
        tolerance: f64,
    ) -> Result<ResidualReport, QuadratureError> {
        let mut per_point = Vec::with_capacity((2 * count + 1) as usize);
        let mut max_abs = 0.0f64;
        let mut worst_index = 0;
        for n in -count..=count {
            let value = self.eval_time(n as f64 + 0.5)?;
            let residual = (value - self.gamma.value(n)).norm();
            if residual > max_abs {
                max_abs = residual;
                worst_index = n;
            }
            per_point.push((n, residual));
        }
        Ok(ResidualReport {
            max_abs,
            worst_index,
            per_point,
            tolerance,
            pass: max_abs <= tolerance,
        })
    }

    /// `sum_k |psihat(xi + 2 pi k)|^2`; equals `|Gamma(-xi)|^2` by the tiling
    /// of the backbone band (and `|Gamma(xi)|^2` for real data).
    pub fn frame_function(&self, xi: f64) -> f64 {
        (-3..=3)
            .map(|k| self.wavelet_hat(xi + 2.0 * PI * k as f64).norm_sqr())
            .sum()
    }

    /// Gram matrix entries `c_m = <psi(. - m), psi>` by frequency quadrature.
    pub fn gram_coefficient(&self, m: i64) -> Result<Complex64, QuadratureError> {
        let (lo, hi) = self.cardinal.wavelet_band();
        let est = self.quadrature.integrate_intervals_complex(
            |xi| {
                self.wavelet_hat(xi).norm_sqr() * Complex64::new(0.0, -(m as f64) * xi).exp()
            },
            &[(-hi, -lo), (lo, hi)],
        )?;
        Ok(est.value / (2.0 * PI))
    }

    /// Eigenvalue range of the `(2K+1) x (2K+1)` Gram section; the Riesz
    /// property pins it inside `[lower, upper]`.
    pub fn gram_eigen_check(&self, half_width: usize) -> Result<EigenInterval, QuadratureError> {
        let n = 2 * half_width + 1;
        let mut coeffs = Vec::with_capacity(2 * half_width + 1);
        for m in 0..=2 * half_width as i64 {
            coeffs.push(self.gram_coefficient(m)?);
        }
        let entry = |r: usize, c: usize| -> Complex64 {
            let m = r as i64 - c as i64;
            if m >= 0 {
                coeffs[m as usize]
            } else {
                coeffs[(-m) as usize].conj()
            }
        };
        let eigen = if self.is_real() {
            let mat = DMatrix::from_fn(n, n, |r, c| entry(r, c).re);
            mat.symmetric_eigen().eigenvalues
        } else {
            // Hermitian H embeds into the real symmetric [[Re, -Im], [Im, Re]]
            // with each eigenvalue doubled.
            let mat = DMatrix::from_fn(2 * n, 2 * n, |r, c| {
                let (ri, ci) = (r % n, c % n);
                let z = entry(ri, ci);
                match (r / n, c / n) {
                    (0, 0) | (1, 1) => z.re,
                    (0, 1) => -z.im,
                    _ => z.im,
                }
            });
            mat.symmetric_eigen().eigenvalues
        };
        let min = eigen.iter().copied().fold(f64::INFINITY, f64::min);
        let max = eigen.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(EigenInterval { min, max, size: n })
    }

    /// Rebuilds the backbone wavelet from `count` dual coefficients and
    /// reports the sup-norm residual over a grid on `[-3, 3]`.
    pub fn reconstruct_cardinal(&self, count: usize) -> Result<ReconstructionReport, DesignError> {
        let dual = dual_symbol_coefficients(&self.symbol, count, &self.bounds, POSITIVITY_TOL)?;
        let grid: Vec<f64> = (0..=60).map(|i| -3.0 + i as f64 * 0.1).collect();
        let mut sup = 0.0f64;
        for &t in &grid {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in -(count as i64)..=count as i64 {
                let beta = dual.value(k);
                if beta.norm_sqr() > 0.0 {
                    acc += beta * self.eval_time(t - k as f64)?;
                }
            }
            sup = sup.max((acc.re - self.cardinal.wavelet(t)).abs().max(acc.im.abs()));
        }
        Ok(ReconstructionReport {
            sup_residual: sup,
            count,
            dual_residual_sup: dual.residual_sup,
        })
    }
}
