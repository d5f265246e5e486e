//! The cardinal (interpolating) orthonormal backbone system.
//!
//! The default is the ideal band-limited system: scaling function
//! `sin(pi t) / (pi t)` and the wavelet occupying the band `pi <= |xi| < 2 pi`.
//! Both interpolate delta data in closed form, which keeps every downstream
//! check exact. The trait keeps the backbone pluggable.

use std::f64::consts::PI;

use num_complex::Complex64;

/// An orthonormal scaling/wavelet pair with the delta-interpolation property.
pub trait CardinalSystem: Send + Sync {
    /// Scaling function; `scaling(k) = delta_{k,0}` on the integers.
    fn scaling(&self, t: f64) -> f64;
    /// Wavelet; `wavelet(n + 1/2) = delta_{n,0}` on the half-integer lattice.
    fn wavelet(&self, t: f64) -> f64;
    /// Frequency-domain wavelet under the convention `F f = int f e^{-i xi t} dt`.
    fn wavelet_hat(&self, xi: f64) -> Complex64;
    /// Positive-frequency support of the wavelet.
    fn wavelet_band(&self) -> (f64, f64);
}

/// The ideal band-limited cardinal pair.
#[derive(Debug, Clone, Copy, Default)]
pub struct ShannonCardinal;

/// Series threshold for the removable singularities.
const SERIES_CUTOFF: f64 = 1e-4;

impl CardinalSystem for ShannonCardinal {
    fn scaling(&self, t: f64) -> f64 {
        sinc(t)
    }

    fn wavelet(&self, t: f64) -> f64 {
        let tau = t - 0.5;
        if tau.abs() < SERIES_CUTOFF {
            // (sin(2 pi tau) - sin(pi tau)) / (pi tau), expanded around tau = 0
            let x = (PI * tau) * (PI * tau);
            1.0 - 7.0 / 6.0 * x + 31.0 / 120.0 * x * x
        } else {
            ((2.0 * PI * tau).sin() - (PI * tau).sin()) / (PI * tau)
        }
    }

    /// `e^{-i xi / 2}` on the band, zero elsewhere.
    ///
    /// The band is taken half-open, `[pi, 2 pi)` and `[-2 pi, -pi)`, so its
    /// 2 pi-translates tile the line with every point covered exactly once;
    /// pointwise identities like the frame function then hold at every grid
    /// point rather than almost everywhere.
    fn wavelet_hat(&self, xi: f64) -> Complex64 {
        let in_band = (PI..2.0 * PI).contains(&xi) || (-2.0 * PI..-PI).contains(&xi);
        if in_band {
            Complex64::new(0.0, -xi / 2.0).exp()
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    fn wavelet_band(&self) -> (f64, f64) {
        (PI, 2.0 * PI)
    }
}

fn sinc(t: f64) -> f64 {
    if t.abs() < SERIES_CUTOFF {
        let x = (PI * t) * (PI * t);
        1.0 - x / 6.0 + x * x / 120.0
    } else {
        (PI * t).sin() / (PI * t)
    }
}
