//! Root analysis of the algebraic polynomial attached to finite data.
//!
//! For finite data supported on `[N1, N2]` the relevant polynomial is
//! `P(z) = sum_j gamma_{N1+j} z^j` of degree `N2 - N1`; the prefactor
//! `z^{max(-N1, 0)}` only adds roots at the origin, which never touch the
//! unit circle. Roots are found with the Aberth-Ehrlich simultaneous
//! iteration and validated by a backward-stable residual bound.

use num_complex::Complex64;

use crate::error::RootError;
use crate::sequence::DataSequence;

/// Roots of the data polynomial plus circle diagnostics.
#[derive(Debug, Clone, serde::Serialize)]
pub struct RootSet {
    /// Roots of the reduced polynomial, multiple roots repeated.
    pub roots: Vec<Complex64>,
    /// Multiplicity of the root at the origin contributed by `z^{max(-N1,0)}`.
    pub zero_multiplicity: usize,
    /// `min_i | |z_i| - 1 |` over the reduced roots.
    pub min_unit_circle_distance: f64,
    /// Largest scaled residual `|P(z_i)| / sum_j |a_j| |z_i|^j`.
    pub max_residual: f64,
}

/// Outcome of the unit-circle margin test.
#[derive(Debug, Clone)]
pub struct UnitCircleCheck {
    pub pass: bool,
    pub margin: f64,
    pub offenders: Vec<Complex64>,
}

/// Solves for all roots of the data polynomial.
pub fn polynomial_roots(gamma: &DataSequence) -> Result<RootSet, RootError> {
    let (offset, coeffs) = finite_coefficients(gamma)?;
    if coeffs.len() < 2 {
        return Err(RootError::DegreeZero);
    }
    let roots = aberth(&coeffs)?;
    let max_residual = roots
        .iter()
        .map(|&z| scaled_residual(&coeffs, z))
        .fold(0.0, f64::max);
    let min_unit_circle_distance = roots
        .iter()
        .map(|z| (z.norm() - 1.0).abs())
        .fold(f64::INFINITY, f64::min);
    Ok(RootSet {
        roots,
        zero_multiplicity: offset.max(0) as usize,
        min_unit_circle_distance,
        max_residual,
    })
}

/// Passes iff every root keeps `| |z| - 1 | >= margin`.
pub fn unit_circle_check(roots: &RootSet, margin: f64) -> UnitCircleCheck {
    let offenders: Vec<Complex64> = roots
        .roots
        .iter()
        .copied()
        .filter(|z| (z.norm() - 1.0).abs() < margin)
        .collect();
    UnitCircleCheck {
        pass: offenders.is_empty(),
        margin,
        offenders,
    }
}

/// Moves roots within `delta` of the unit circle outward to modulus `1 + delta`.
///
/// Arguments are preserved, so conjugate pairs stay conjugate and real data
/// stays real. The rebuilt coefficients are normalized so the entry at the
/// lowest support index is unchanged. Data with no offending roots is
/// returned as-is.
pub fn perturb_roots(gamma: &DataSequence, delta: f64) -> Result<DataSequence, RootError> {
    let (offset, coeffs) = finite_coefficients(gamma)?;
    if coeffs.len() < 2 {
        return Err(RootError::DegreeZero);
    }
    let roots = aberth(&coeffs)?;
    let mut moved = false;
    let adjusted: Vec<Complex64> = roots
        .iter()
        .map(|&z| {
            if (z.norm() - 1.0).abs() < delta {
                moved = true;
                let arg = z.arg();
                Complex64::from_polar(1.0 + delta, arg)
            } else {
                z
            }
        })
        .collect();
    if !moved {
        return Ok(gamma.clone());
    }

    let monic = expand_monic(&adjusted);
    // Preserve the lowest-index coefficient: scale so rebuilt[0] = gamma_{N1}.
    let scale = coeffs[0] / monic[0];
    let mut rebuilt: Vec<Complex64> = monic.iter().map(|c| c * scale).collect();
    rebuilt[0] = coeffs[0];
    if gamma.is_real() {
        for c in &mut rebuilt {
            c.im = 0.0;
        }
    }
    DataSequence::finite(offset, rebuilt).map_err(|_| RootError::DegreeZero)
}

fn finite_coefficients(gamma: &DataSequence) -> Result<(i64, Vec<Complex64>), RootError> {
    match gamma {
        DataSequence::Finite { offset, values } => Ok((*offset, values.clone())),
        DataSequence::Decaying { .. } => Err(RootError::DegreeZero),
    }
}

/// Coefficients (ascending, constant term first) of `prod_i (z - r_i)`.
fn expand_monic(roots: &[Complex64]) -> Vec<Complex64> {
    let mut poly = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
        for (j, &c) in poly.iter().enumerate() {
            next[j] -= c * r;
            next[j + 1] += c;
        }
        poly = next;
    }
    poly
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

fn scaled_residual(coeffs: &[Complex64], z: Complex64) -> f64 {
    let mut scale = 0.0;
    let mut zk = 1.0;
    let r = z.norm();
    for c in coeffs {
        scale += c.norm() * zk;
        zk *= r;
    }
    horner(coeffs, z).norm() / scale.max(f64::MIN_POSITIVE)
}

/// Aberth-Ehrlich simultaneous iteration.
fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>, RootError> {
    let degree = coeffs.len() - 1;
    let lead = coeffs[degree];
    let deriv: Vec<Complex64> = (1..=degree)
        .map(|j| coeffs[j] * j as f64)
        .collect();

    // Initial guesses on a circle at the geometric-mean radius estimate.
    let radius = (coeffs[0].norm() / lead.norm()).powf(1.0 / degree as f64);
    let radius = if radius.is_finite() && radius > 0.0 {
        radius
    } else {
        1.0
    };
    let mut z: Vec<Complex64> = (0..degree)
        .map(|i| {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / degree as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    let mut converged = vec![false; degree];
    for _ in 0..200 {
        let mut all_done = true;
        for i in 0..degree {
            if converged[i] {
                continue;
            }
            let p = horner(coeffs, z[i]);
            let dp = horner(&deriv, z[i]);
            let newton = if dp.norm() > 0.0 { p / dp } else { p };
            let mut repel = Complex64::new(0.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    let d = z[i] - zj;
                    if d.norm() > 1e-300 {
                        repel += Complex64::new(1.0, 0.0) / d;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repel;
            let step = if denom.norm() > 1e-300 {
                newton / denom
            } else {
                newton
            };
            z[i] -= step;
            if step.norm() <= 1e-14 * (1.0 + z[i].norm()) {
                converged[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }

    let ok: Vec<bool> = z.iter().map(|&zi| scaled_residual(coeffs, zi) < 1e-10).collect();
    let n_ok = ok.iter().filter(|&&b| b).count();
    if n_ok < degree {
        return Err(RootError::NoConvergence {
            converged: n_ok,
            total: degree,
            partial: z,
        });
    }
    Ok(z)
}
