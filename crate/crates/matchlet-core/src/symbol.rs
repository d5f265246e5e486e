//! The trigonometric symbol of a coefficient sequence and its frame bounds.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{DesignError, SequenceError};
use crate::sequence::DataSequence;

/// Evaluator for `Gamma(xi) = sum_k gamma_k e^{i k xi}`.
#[derive(Debug, Clone)]
pub struct SymbolPolynomial {
    offset: i64,
    coefficients: Vec<Complex64>,
    grid_density: usize,
    truncation_error: f64,
}

/// Extrema of `|Gamma|^2` over one period; the Riesz constants of the design.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
    pub argmin: f64,
    pub argmax: f64,
    /// Uncertainty inherited from certified truncation of infinite data.
    pub uncertainty: f64,
}

impl FrameBounds {
    /// The design is usable only when the lower bound clears the tolerance.
    pub fn is_riesz(&self, tol: f64) -> bool {
        self.lower > tol + self.uncertainty
    }
}

/// Builds the symbol, truncating certified infinite data at tolerance `tol`.
pub fn symbol_from_sequence(
    gamma: &DataSequence,
    tol: f64,
) -> Result<SymbolPolynomial, SequenceError> {
    let (finite, tail) = gamma.truncate(tol)?;
    let DataSequence::Finite { offset, values } = finite else {
        unreachable!("truncate yields finite data");
    };
    Ok(SymbolPolynomial {
        offset,
        coefficients: values,
        grid_density: 4096,
        truncation_error: tail,
    })
}

impl SymbolPolynomial {
    pub fn eval(&self, xi: f64) -> Complex64 {
        // Horner in e^{i xi}, then shift by the offset phase.
        let z = Complex64::new(0.0, xi).exp();
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coefficients.iter().rev() {
            acc = acc * z + c;
        }
        acc * Complex64::new(0.0, self.offset as f64 * xi).exp()
    }

    pub fn eval_sq_modulus(&self, xi: f64) -> f64 {
        self.eval(xi).norm_sqr()
    }

    /// `Gamma'(xi) = sum_k i k gamma_k e^{i k xi}`.
    pub fn eval_deriv(&self, xi: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.coefficients.iter().enumerate() {
            let k = self.offset + j as i64;
            acc += Complex64::new(0.0, k as f64)
                * c
                * Complex64::new(0.0, k as f64 * xi).exp();
        }
        acc
    }

    /// Derivative of `|Gamma|^2`, exact up to rounding.
    pub fn eval_sq_modulus_deriv(&self, xi: f64) -> f64 {
        2.0 * (self.eval_deriv(xi) * self.eval(xi).conj()).re
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn grid_density(&self) -> usize {
        self.grid_density
    }

    pub fn truncation_error(&self) -> f64 {
        self.truncation_error
    }

    pub fn is_real(&self) -> bool {
        self.coefficients.iter().all(|c| c.im == 0.0)
    }
}

/// Extrema of `|Gamma|^2`: dense scan plus golden-section refinement.
pub fn compute_frame_bounds(symbol: &SymbolPolynomial) -> FrameBounds {
    let n = symbol.grid_density();
    let f = |xi: f64| symbol.eval_sq_modulus(xi);
    let mut min_idx = 0;
    let mut max_idx = 0;
    let mut min_val = f64::INFINITY;
    let mut max_val = f64::NEG_INFINITY;
    for i in 0..n {
        let xi = 2.0 * PI * i as f64 / n as f64;
        let v = f(xi);
        if v < min_val {
            min_val = v;
            min_idx = i;
        }
        if v > max_val {
            max_val = v;
            max_idx = i;
        }
    }
    let step = 2.0 * PI / n as f64;
    let bracket = |i: usize| {
        let xi = 2.0 * PI * i as f64 / n as f64;
        (xi - step, xi + step)
    };
    let (lo, hi) = bracket(min_idx);
    let (argmin, lower) = refine_extremum(symbol, lo, hi, false);
    let (lo, hi) = bracket(max_idx);
    let (argmax, upper) = refine_extremum(symbol, lo, hi, true);
    let wrap = |xi: f64| xi.rem_euclid(2.0 * PI);
    FrameBounds {
        lower: lower.min(min_val),
        upper: upper.max(max_val),
        argmin: wrap(argmin),
        argmax: wrap(argmax),
        uncertainty: frame_uncertainty(symbol),
    }
}

/// First-order effect of the truncation tail on `|Gamma|^2`.
fn frame_uncertainty(symbol: &SymbolPolynomial) -> f64 {
    let tail = symbol.truncation_error();
    if tail == 0.0 {
        return 0.0;
    }
    let sup: f64 = symbol.coefficients().iter().map(|c| c.norm()).sum();
    tail * (2.0 * sup + tail)
}

/// Refines a bracketed extremum of `|Gamma|^2`.
///
/// Bisection on the analytic derivative pins the location to 1e-12; when the
/// derivative does not change sign across the bracket (constant symbol, or an
/// extremum flatter than rounding), golden section on the value takes over.
fn refine_extremum(
    symbol: &SymbolPolynomial,
    lo: f64,
    hi: f64,
    maximize: bool,
) -> (f64, f64) {
    let f = |xi: f64| symbol.eval_sq_modulus(xi);
    let g = |xi: f64| symbol.eval_sq_modulus_deriv(xi);
    let (mut a, mut b) = (lo, hi);
    let (ga, gb) = (g(a), g(b));
    let wanted = if maximize { (1.0, -1.0) } else { (-1.0, 1.0) };
    if ga * wanted.0 > 0.0 && gb * wanted.1 > 0.0 {
        while b - a > 1e-13 {
            let mid = 0.5 * (a + b);
            let gm = g(mid);
            if gm * wanted.0 > 0.0 {
                a = mid;
            } else if gm * wanted.1 > 0.0 {
                b = mid;
            } else {
                return (mid, f(mid));
            }
        }
        let xm = 0.5 * (a + b);
        return (xm, f(xm));
    }
    golden_section(&f, lo, hi, maximize)
}

/// Golden-section refinement of a bracketed extremum to 1e-12 in xi.
pub(crate) fn golden_section(
    f: &dyn Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    maximize: bool,
) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let sign = if maximize { -1.0 } else { 1.0 };
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = sign * f(x1);
    let mut f2 = sign * f(x2);
    while hi - lo > 1e-12 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = sign * f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = sign * f(x2);
        }
    }
    let xm = 0.5 * (lo + hi);
    (xm, f(xm))
}

/// Fourier coefficients of `1/Gamma` with a residual report.
#[derive(Debug, Clone)]
pub struct DualSymbol {
    /// beta_k for k in [-count, count], stored in index order.
    pub coefficients: Vec<Complex64>,
    pub first_index: i64,
    /// `sup |Gamma(xi) * B(xi) - 1|` over the evaluation grid.
    pub residual_sup: f64,
}

impl DualSymbol {
    pub fn value(&self, k: i64) -> Complex64 {
        let idx = k - self.first_index;
        if idx >= 0 && (idx as usize) < self.coefficients.len() {
            self.coefficients[idx as usize]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }
}

/// Computes `beta_k = (1/2pi) int e^{-i k xi} / Gamma(xi) dxi` for |k| <= count.
///
/// The periodic trapezoid rule is spectrally accurate here; the grid is also
/// reused for the residual sweep of `Gamma * B - 1`.
pub fn dual_symbol_coefficients(
    symbol: &SymbolPolynomial,
    count: usize,
    bounds: &FrameBounds,
    positivity_tol: f64,
) -> Result<DualSymbol, DesignError> {
    if !bounds.is_riesz(positivity_tol) {
        return Err(DesignError::UnboundedDual {
            lower: bounds.lower,
        });
    }
    let n = (symbol.grid_density().max(8 * count + 8)).next_power_of_two();
    let inv: Vec<Complex64> = (0..n)
        .map(|i| {
            let xi = 2.0 * PI * i as f64 / n as f64;
            Complex64::new(1.0, 0.0) / symbol.eval(xi)
        })
        .collect();
    let m = count as i64;
    let mut coefficients = Vec::with_capacity(2 * count + 1);
    for k in -m..=m {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, v) in inv.iter().enumerate() {
            let xi = 2.0 * PI * i as f64 / n as f64;
            acc += v * Complex64::new(0.0, -(k as f64) * xi).exp();
        }
        coefficients.push(acc / n as f64);
    }
    let dual = DualSymbol {
        coefficients,
        first_index: -m,
        residual_sup: 0.0,
    };
    let mut residual_sup: f64 = 0.0;
    for i in 0..n {
        let xi = 2.0 * PI * i as f64 / n as f64;
        let mut b = Complex64::new(0.0, 0.0);
        for k in -m..=m {
            b += dual.value(k) * Complex64::new(0.0, k as f64 * xi).exp();
        }
        residual_sup = residual_sup.max((symbol.eval(xi) * b - 1.0).norm());
    }
    Ok(DualSymbol {
        residual_sup,
        ..dual
    })
}
