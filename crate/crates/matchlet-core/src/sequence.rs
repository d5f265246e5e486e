//! Interpolation data: finite coefficient lists and certified decaying tails.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::SequenceError;

/// Certifies `|gamma_k| <= constant * |k|^(-2 - exponent_excess)` for all k != 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayCertificate {
    pub constant: f64,
    pub exponent_excess: f64,
}

impl DecayCertificate {
    pub fn new(constant: f64, exponent_excess: f64) -> Result<Self, SequenceError> {
        let valid = constant > 0.0 && exponent_excess > 0.0;
        if !valid {
            return Err(SequenceError::InvalidCertificate {
                constant,
                exponent_excess,
            });
        }
        Ok(Self {
            constant,
            exponent_excess,
        })
    }

    /// Pointwise bound at index k (infinite at k = 0, where the bound is vacuous).
    pub fn bound(&self, k: i64) -> f64 {
        if k == 0 {
            f64::INFINITY
        } else {
            self.constant * (k.unsigned_abs() as f64).powf(-(2.0 + self.exponent_excess))
        }
    }

    /// Bound on `sum_{|k| > cutoff} |gamma_k|` via the integral comparison.
    pub fn two_sided_tail(&self, cutoff: u64) -> f64 {
        let eps = self.exponent_excess;
        2.0 * self.constant * (cutoff as f64).powf(-(1.0 + eps)) / (1.0 + eps)
    }

    /// Smallest cutoff whose two-sided tail is below `tol`.
    pub fn cutoff_for(&self, tol: f64) -> u64 {
        let eps = self.exponent_excess;
        let raw = (2.0 * self.constant / ((1.0 + eps) * tol)).powf(1.0 / (1.0 + eps));
        (raw.ceil().max(1.0) as u64).min(1 << 24)
    }
}

type Evaluator = Arc<dyn Fn(i64) -> Complex64 + Send + Sync>;

/// Target samples on the half-integer lattice, indexed over the integers.
///
/// Finite data carries explicit coefficients with an index offset; infinite
/// data carries an evaluator and a decay certificate so tails can be bounded.
#[derive(Clone)]
pub enum DataSequence {
    Finite {
        /// Index of the first stored coefficient.
        offset: i64,
        /// Coefficients, trimmed so the first and last entries are nonzero.
        values: Vec<Complex64>,
    },
    Decaying {
        eval: Evaluator,
        certificate: DecayCertificate,
    },
}

impl fmt::Debug for DataSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite { offset, values } => f
                .debug_struct("Finite")
                .field("offset", offset)
                .field("values", values)
                .finish(),
            Self::Decaying { certificate, .. } => f
                .debug_struct("Decaying")
                .field("certificate", certificate)
                .finish(),
        }
    }
}

impl DataSequence {
    /// Builds a finite sequence, trimming zero entries at both ends.
    pub fn finite(offset: i64, values: Vec<Complex64>) -> Result<Self, SequenceError> {
        let lead = values.iter().position(|v| v.norm() != 0.0);
        let Some(lead) = lead else {
            return Err(SequenceError::Empty);
        };
        let tail = values.iter().rposition(|v| v.norm() != 0.0).unwrap();
        Ok(Self::Finite {
            offset: offset + lead as i64,
            values: values[lead..=tail].to_vec(),
        })
    }

    pub fn finite_real(offset: i64, values: &[f64]) -> Result<Self, SequenceError> {
        Self::finite(
            offset,
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    pub fn decaying(
        eval: impl Fn(i64) -> Complex64 + Send + Sync + 'static,
        certificate: DecayCertificate,
    ) -> Self {
        Self::Decaying {
            eval: Arc::new(eval),
            certificate,
        }
    }

    /// Coefficient at index k (zero outside the support of finite data).
    pub fn value(&self, k: i64) -> Complex64 {
        match self {
            Self::Finite { offset, values } => {
                let idx = k - offset;
                if idx >= 0 && (idx as usize) < values.len() {
                    values[idx as usize]
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            Self::Decaying { eval, .. } => eval(k),
        }
    }

    /// Support `[first, last]` of finite data.
    pub fn support(&self) -> Option<(i64, i64)> {
        match self {
            Self::Finite { offset, values } => Some((*offset, offset + values.len() as i64 - 1)),
            Self::Decaying { .. } => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Self::Finite { .. })
    }

    pub fn is_real(&self) -> bool {
        match self {
            Self::Finite { values, .. } => values.iter().all(|v| v.im == 0.0),
            Self::Decaying { .. } => false,
        }
    }

    /// Real parts of the finite coefficients (valid when `is_real`).
    pub fn real_values(&self) -> Option<(i64, Vec<f64>)> {
        match self {
            Self::Finite { offset, values } if self.is_real() => {
                Some((*offset, values.iter().map(|v| v.re).collect()))
            }
            _ => None,
        }
    }

    /// Finite representation whose certified truncation error is below `tol`.
    ///
    /// Returns the truncated sequence and the tail bound on
    /// `sum_{|k| > cutoff} |gamma_k|`, which bounds the sup-norm error of the
    /// truncated symbol. Samples drawn during truncation are checked against
    /// the certificate.
    pub fn truncate(&self, tol: f64) -> Result<(Self, f64), SequenceError> {
        match self {
            Self::Finite { .. } => Ok((self.clone(), 0.0)),
            Self::Decaying { eval, certificate } => {
                let cutoff = certificate.cutoff_for(tol);
                let mut values = Vec::with_capacity(2 * cutoff as usize + 1);
                for k in -(cutoff as i64)..=(cutoff as i64) {
                    let v = eval(k);
                    let bound = certificate.bound(k);
                    if v.norm() > bound * (1.0 + 1e-12) {
                        return Err(SequenceError::CertificateViolated {
                            index: k,
                            value: v.norm(),
                            bound,
                        });
                    }
                    values.push(v);
                }
                let seq = Self::finite(-(cutoff as i64), values)?;
                Ok((seq, certificate.two_sided_tail(cutoff)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_zero_padding() {
        let seq =
            DataSequence::finite_real(-2, &[0.0, 1.0, 0.5, 0.0]).expect("nonzero data trims");
        assert_eq!(seq.support(), Some((-1, 0)));
        assert_eq!(seq.value(-1).re, 1.0);
        assert_eq!(seq.value(0).re, 0.5);
        assert_eq!(seq.value(1).re, 0.0);
    }

    #[test]
    fn rejects_all_zero() {
        assert!(matches!(
            DataSequence::finite_real(0, &[0.0, 0.0]),
            Err(SequenceError::Empty)
        ));
    }

    #[test]
    fn certificate_tail_controls_truncation() {
        let cert = DecayCertificate::new(1.0, 2.0).unwrap();
        let seq = DataSequence::decaying(
            |k| {
                if k == 0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new((1.0 + k.abs() as f64).powi(-4), 0.0)
                }
            },
            cert,
        );
        let (finite, tail) = seq.truncate(1e-8).unwrap();
        assert!(finite.is_finite());
        assert!(tail <= 1e-8);
        // truncated coefficients agree with the evaluator
        assert_eq!(finite.value(3).re, (4.0f64).powi(-4));
    }

    #[test]
    fn certificate_violation_detected() {
        let cert = DecayCertificate::new(0.5, 1.0).unwrap();
        let seq = DataSequence::decaying(|_| Complex64::new(1.0, 0.0), cert);
        assert!(matches!(
            seq.truncate(1e-6),
            Err(SequenceError::CertificateViolated { .. })
        ));
    }
}
