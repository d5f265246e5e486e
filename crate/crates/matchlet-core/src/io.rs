//! Problem specifications, design artifacts, and sample output.
//!
//! Specs, artifacts, and reports are JSON under the `matchlet/1` schema;
//! samples are CSV. Coefficient payloads are stored as decimal strings with
//! 17 significant digits so double-precision values round-trip bit-exactly.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::error::DesignError;
use crate::matched::{design_matched_with, MatchedWavelet};
use crate::meyer::{
    build_meyer, check_admissibility, solve_h_coefficients, AdmissibilityReport,
    MeyerTargetSequence, MeyerWaveletModel, DEFAULT_N_MAX,
};
use crate::quadrature::QuadratureSpec;
use crate::sequence::{DataSequence, DecayCertificate};
use crate::verify::{matched_suite, meyer_suite, VerificationReport};
use crate::cardinal::ShannonCardinal;

pub const SCHEMA_VERSION: &str = "matchlet/1";

/// Spec/schema-level failures (the CLI's usage-error class).
#[derive(Debug, Error)]
pub enum SpecError {
    #[error("unsupported schema version {found:?}; expected {SCHEMA_VERSION:?}")]
    Version { found: String },
    #[error("schema violation: {0}")]
    Schema(String),
}

/// Either stage of the design pipeline.
#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Design(#[from] DesignError),
}

/// An f64 carried as a 17-significant-digit decimal string in JSON.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PreciseF64(pub f64);

impl Serialize for PreciseF64 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format!("{:.16e}", self.0))
    }
}

impl<'de> Deserialize<'de> for PreciseF64 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse::<f64>()
            .map(PreciseF64)
            .map_err(|e| D::Error::custom(format!("bad float literal {s:?}: {e}")))
    }
}

impl fmt::Display for PreciseF64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Lattice {
    #[serde(rename = "half-integer")]
    HalfInteger,
    #[serde(rename = "meyer3")]
    Meyer3,
}

/// One coefficient: a real or a `[re, im]` pair.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GammaValue {
    Real(f64),
    Complex([f64; 2]),
}

impl GammaValue {
    fn to_complex(self) -> Complex64 {
        match self {
            Self::Real(v) => Complex64::new(v, 0.0),
            Self::Complex([re, im]) => Complex64::new(re, im),
        }
    }

    fn is_real(self) -> bool {
        matches!(self, Self::Real(_)) || matches!(self, Self::Complex([_, im]) if im == 0.0)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorSpec {
    /// Only `power-decay` is built in: `gamma_k = amplitude (1 + |k|)^(-exponent)`.
    pub name: String,
    pub amplitude: f64,
    pub exponent: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GammaSpec {
    Values {
        values: Vec<GammaValue>,
        #[serde(default)]
        offset: i64,
    },
    Generator {
        generator: GeneratorSpec,
        decay: DecayCertificate,
        #[serde(default = "default_n_max")]
        n_max: usize,
    },
}

fn default_n_max() -> usize {
    DEFAULT_N_MAX
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub interpolation: f64,
    pub admissibility: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            interpolation: 1e-8,
            admissibility: 1e-12,
        }
    }
}

/// The JSON problem specification consumed by `design`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub version: String,
    pub lattice: Lattice,
    pub gamma: GammaSpec,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<QuadratureSpec>,
}

impl ProblemSpec {
    pub fn half_integer(values: Vec<GammaValue>, offset: i64) -> Self {
        Self {
            version: SCHEMA_VERSION.to_string(),
            lattice: Lattice::HalfInteger,
            gamma: GammaSpec::Values { values, offset },
            tolerances: Tolerances::default(),
            quadrature: None,
        }
    }

    pub fn meyer3(values: Vec<f64>) -> Self {
        Self {
            version: SCHEMA_VERSION.to_string(),
            lattice: Lattice::Meyer3,
            gamma: GammaSpec::Values {
                values: values.into_iter().map(GammaValue::Real).collect(),
                offset: 0,
            },
            tolerances: Tolerances::default(),
            quadrature: None,
        }
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        if self.version != SCHEMA_VERSION {
            return Err(SpecError::Version {
                found: self.version.clone(),
            });
        }
        match (&self.lattice, &self.gamma) {
            (Lattice::Meyer3, GammaSpec::Values { values, offset }) => {
                if *offset != 0 {
                    return Err(SpecError::Schema(
                        "meyer3 lattice requires offset 0".to_string(),
                    ));
                }
                if values.iter().any(|v| !v.is_real()) {
                    return Err(SpecError::Schema(
                        "meyer3 lattice requires real gamma".to_string(),
                    ));
                }
            }
            (_, GammaSpec::Generator { generator, .. }) => {
                if generator.name != "power-decay" {
                    return Err(SpecError::Schema(format!(
                        "unknown generator {:?}; available: power-decay",
                        generator.name
                    )));
                }
                if generator.exponent <= 2.0 {
                    return Err(SpecError::Schema(
                        "power-decay exponent must exceed 2".to_string(),
                    ));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Quadrature settings: explicit override or defaults.
    pub fn quadrature_or_default(&self) -> QuadratureSpec {
        self.quadrature.unwrap_or_default()
    }

    fn data_sequence(&self) -> Result<DataSequence, SpecError> {
        match &self.gamma {
            GammaSpec::Values { values, offset } => DataSequence::finite(
                *offset,
                values.iter().map(|v| v.to_complex()).collect(),
            )
            .map_err(|e| SpecError::Schema(e.to_string())),
            GammaSpec::Generator {
                generator, decay, ..
            } => {
                let amp = generator.amplitude;
                let exp = generator.exponent;
                Ok(DataSequence::decaying(
                    move |k| Complex64::new(amp * (1.0 + k.abs() as f64).powf(-exp), 0.0),
                    *decay,
                ))
            }
        }
    }

    fn meyer_sequence(&self) -> Result<(MeyerTargetSequence, usize), SpecError> {
        match &self.gamma {
            GammaSpec::Values { values, .. } => {
                let reals: Vec<f64> = values
                    .iter()
                    .map(|v| v.to_complex().re)
                    .collect();
                let n_max = (2 * reals.len()).max(2);
                Ok((MeyerTargetSequence::finite(reals), n_max))
            }
            GammaSpec::Generator {
                generator,
                decay,
                n_max,
            } => {
                let amp = generator.amplitude;
                let exp = generator.exponent;
                Ok((
                    MeyerTargetSequence::decaying(
                        move |k| amp * (1.0 + k as f64).powf(-exp),
                        *decay,
                    ),
                    *n_max,
                ))
            }
        }
    }
}

/// A designed model ready for evaluation and verification.
#[derive(Debug)]
pub enum DesignModel {
    Matched(MatchedWavelet),
    Meyer {
        model: MeyerWaveletModel,
        admissibility: AdmissibilityReport,
    },
}

impl DesignModel {
    pub fn is_real(&self) -> bool {
        match self {
            Self::Matched(w) => w.is_real(),
            Self::Meyer { .. } => true,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundsRecord {
    pub lower: PreciseF64,
    pub upper: PreciseF64,
    pub argmin: PreciseF64,
    pub argmax: PreciseF64,
    pub uncertainty: PreciseF64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdmissibilityRecord {
    pub lhs: [PreciseF64; 3],
    pub tail_bounds: [PreciseF64; 3],
    pub tolerance: PreciseF64,
    pub pass: [bool; 3],
}

/// Designed coefficients in their bit-exact string form.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DesignSummary {
    Matched {
        offset: i64,
        gamma_re: Vec<PreciseF64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        gamma_im: Option<Vec<PreciseF64>>,
        bounds: BoundsRecord,
        truncation_error: PreciseF64,
    },
    Meyer {
        gamma: Vec<PreciseF64>,
        h_coefficients: Vec<PreciseF64>,
        admissibility: AdmissibilityRecord,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub tool_version: String,
    pub unix_time: u64,
}

/// Persisted design: problem echo plus the derived coefficients.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DesignArtifact {
    pub version: String,
    pub problem: ProblemSpec,
    pub design: DesignSummary,
    pub created: Metadata,
}

fn metadata() -> Metadata {
    Metadata {
        tool: "matchlet".to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        unix_time: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    }
}

/// Runs the appropriate designer for the spec.
pub fn design_from_spec(spec: &ProblemSpec) -> Result<(DesignModel, DesignArtifact), PipelineError> {
    spec.validate()?;
    let quadrature = spec.quadrature_or_default();
    match spec.lattice {
        Lattice::HalfInteger => {
            let gamma = spec.data_sequence()?;
            let wavelet =
                design_matched_with(&gamma, quadrature, std::sync::Arc::new(ShannonCardinal))?;
            let symbol = wavelet.symbol();
            let bounds = wavelet.bounds();
            let coeffs = symbol.coefficients();
            let gamma_im: Option<Vec<PreciseF64>> = if wavelet.is_real() {
                None
            } else {
                Some(coeffs.iter().map(|c| PreciseF64(c.im)).collect())
            };
            let summary = DesignSummary::Matched {
                offset: symbol.offset(),
                gamma_re: coeffs.iter().map(|c| PreciseF64(c.re)).collect(),
                gamma_im,
                bounds: BoundsRecord {
                    lower: PreciseF64(bounds.lower),
                    upper: PreciseF64(bounds.upper),
                    argmin: PreciseF64(bounds.argmin),
                    argmax: PreciseF64(bounds.argmax),
                    uncertainty: PreciseF64(bounds.uncertainty),
                },
                truncation_error: PreciseF64(symbol.truncation_error()),
            };
            let artifact = DesignArtifact {
                version: SCHEMA_VERSION.to_string(),
                problem: spec.clone(),
                design: summary,
                created: metadata(),
            };
            Ok((DesignModel::Matched(wavelet), artifact))
        }
        Lattice::Meyer3 => {
            let (gamma, n_max) = spec.meyer_sequence()?;
            let admissibility =
                check_admissibility(&gamma, n_max, spec.tolerances.admissibility)
                    .map_err(DesignError::Sequence)?;
            // lhs1 and lhs2 predict h(0) and h(pi/3); failing either dooms the bell
            if !admissibility.pass[0] {
                return Err(PipelineError::Design(DesignError::BellEndpoint {
                    name: "h(0)",
                    value: admissibility.lhs[0],
                    expected: 1.0,
                }));
            }
            if !admissibility.pass[1] {
                return Err(PipelineError::Design(DesignError::BellEndpoint {
                    name: "h(pi/3)",
                    value: admissibility.lhs[1],
                    expected: std::f64::consts::FRAC_1_SQRT_2,
                }));
            }
            let bell = solve_h_coefficients(&gamma, n_max).map_err(DesignError::Sequence)?;
            let stored_gamma: Vec<PreciseF64> = (0..=gamma
                .finite_support()
                .unwrap_or(n_max as u64))
                .map(|k| PreciseF64(gamma.value(k)))
                .collect();
            let summary = DesignSummary::Meyer {
                gamma: stored_gamma,
                h_coefficients: bell.values.iter().map(|&v| PreciseF64(v)).collect(),
                admissibility: AdmissibilityRecord {
                    lhs: admissibility.lhs.map(PreciseF64),
                    tail_bounds: admissibility.tail_bounds.map(PreciseF64),
                    tolerance: PreciseF64(admissibility.tolerance),
                    pass: admissibility.pass,
                },
            };
            let model = build_meyer(bell, gamma, quadrature)?;
            let artifact = DesignArtifact {
                version: SCHEMA_VERSION.to_string(),
                problem: spec.clone(),
                design: summary,
                created: metadata(),
            };
            Ok((
                DesignModel::Meyer {
                    model,
                    admissibility,
                },
                artifact,
            ))
        }
    }
}

/// Rebuilds the model from a persisted artifact (via the problem echo, so
/// every verify run walks the same deterministic pipeline as the design run).
pub fn model_from_artifact(artifact: &DesignArtifact) -> Result<DesignModel, PipelineError> {
    if artifact.version != SCHEMA_VERSION {
        return Err(PipelineError::Spec(SpecError::Version {
            found: artifact.version.clone(),
        }));
    }
    Ok(design_from_spec(&artifact.problem)?.0)
}

/// Runs the module-appropriate invariant battery.
pub fn run_suite(model: &DesignModel) -> Result<VerificationReport, DesignError> {
    match model {
        DesignModel::Matched(w) => matched_suite(w).map_err(DesignError::Quadrature),
        DesignModel::Meyer {
            model,
            admissibility,
        } => meyer_suite(model, admissibility).map_err(DesignError::Quadrature),
    }
}

/// Uniform time samples as CSV, endpoints inclusive.
pub fn sample_csv(
    model: &DesignModel,
    t_min: f64,
    t_max: f64,
    n_points: usize,
) -> Result<String, DesignError> {
    let complex = !model.is_real();
    let mut out = String::new();
    out.push_str(if complex { "t,value,value_im\n" } else { "t,value\n" });
    for i in 0..n_points {
        let t = if n_points == 1 {
            t_min
        } else {
            t_min + (t_max - t_min) * i as f64 / (n_points - 1) as f64
        };
        match model {
            DesignModel::Matched(w) => {
                let v = w.eval_time(t).map_err(DesignError::Quadrature)?;
                if complex {
                    out.push_str(&format!("{t},{},{}\n", v.re, v.im));
                } else {
                    out.push_str(&format!("{t},{}\n", v.re));
                }
            }
            DesignModel::Meyer { model, .. } => {
                let v = model.eval_psi_time(t).map_err(DesignError::Quadrature)?;
                out.push_str(&format!("{t},{v}\n"));
            }
        }
    }
    Ok(out)
}

/// Writes via a temp file in the same directory, then renames into place.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let tmp = match dir {
        Some(d) => d.join(format!(
            ".{}.tmp{}",
            path.file_name().and_then(|n| n.to_str()).unwrap_or("out"),
            std::process::id()
        )),
        None => Path::new(&format!(".matchlet.tmp{}", std::process::id())).to_path_buf(),
    };
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serialization cannot fail") + "\n"
}
