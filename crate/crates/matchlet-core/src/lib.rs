//! Construction and verification of wavelets that interpolate prescribed
//! data on uniform lattices.
//!
//! Two designers are provided:
//!
//! * [`matched::design_matched`] builds a Riesz-basis wavelet matching data
//!   `gamma_k` on the half-integer lattice `k + 1/2`, as a coefficient series
//!   against a cardinal band-limited backbone. The Riesz constants are the
//!   extrema of `|Gamma|^2` for the data symbol `Gamma`.
//! * [`meyer`] builds an orthonormal band-limited (Meyer-type) wavelet whose
//!   values on the sparse lattice `1/2 + 3k` match prescribed decaying data,
//!   by solving a dyadic recurrence for the cosine coefficients of the bell
//!   profile.
//!
//! Everything checkable is checked: interpolation residuals, frame-function
//! identities, root locations, Gram spectra, partitions of unity, and mask
//! complementarity, all through one shared quadrature engine with a
//! refinement self-check. See [`verify`] for the invariant batteries and
//! [`io`] for the JSON/CSV formats used by the command-line front end.

pub mod cardinal;
pub mod error;
pub mod io;
pub mod matched;
pub mod meyer;
pub mod quadrature;
pub mod roots;
pub mod sequence;
pub mod symbol;
pub mod verify;

pub use cardinal::{CardinalSystem, ShannonCardinal};
pub use error::{DesignError, QuadratureError, RootError, SequenceError};
pub use matched::{design_matched, design_matched_with, MatchedWavelet};
pub use meyer::{
    build_meyer, check_admissibility, eval_h, project_feasible, solve_h_coefficients,
    AdmissibilityReport, BellCoefficients, MeyerTargetSequence, MeyerWaveletModel,
};
pub use quadrature::QuadratureSpec;
pub use roots::{perturb_roots, polynomial_roots, unit_circle_check, RootSet};
pub use sequence::{DataSequence, DecayCertificate};
pub use symbol::{
    compute_frame_bounds, dual_symbol_coefficients, symbol_from_sequence, FrameBounds,
    SymbolPolynomial,
};
pub use verify::{Check, VerificationReport};
