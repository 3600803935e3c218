//! Generalized Wigner-Yanase-Dyson skew information, the quantum
//! uncertainties built from it, and the uncertainty/complementarity relations
//! it satisfies with respect to mutually unbiased measurements (MUMs) and
//! general symmetric informationally complete POVMs (GSIC-POVMs).
//!
//! Module map:
//!
//! - [`hermitian`]: validated observables and density matrices, eigendecomposition,
//!   fractional powers, seeded random ensembles.
//! - [`bases`]: generalized Gell-Mann and complete observable bases.
//! - [`skew`]: skew informations and quantum uncertainties (operator and spectral routes).
//! - [`measurements`]: MUM, MUB, general SIC-POVM constructions and certification.
//! - [`relations`]: both sides of every relation, as structured reports.
//! - [`states`]: Werner family and fixture states.
//! - [`suite`]: randomized verification suites and the Werner sweep.

pub mod bases;
pub mod error;
pub mod hermitian;
pub mod interchange;
pub mod measurements;
pub mod relations;
pub mod report;
pub mod skew;
pub mod states;
pub mod suite;

pub use error::{Error, Result};
pub use hermitian::{CMatrix, DensityMatrix, Observable, Spectrum};
pub use skew::ExponentPair;
