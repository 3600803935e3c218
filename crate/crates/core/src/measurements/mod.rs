//! Measurement families: mutually unbiased measurements (MUMs), mutually
//! unbiased bases (MUBs) in prime dimension, and general SIC-POVMs.
//!
//! MUM and general SIC elements are affine in a strength parameter `t`,
//! `P(t) = c·I + t·F` with `F` traceless, so positivity holds on an interval
//! `[0, t_max]` found by doubling and bisection on the minimum eigenvalue.

mod mub;
mod mum;
mod sic;

pub use mub::{build_mubs_prime, is_prime, mub_to_projector_mum, verify_mub, MubSet};
pub use mum::{
    build_mums, kappa_for_t, max_feasible_t_mum, mum_directions, verify_mum, MumSet,
};
pub use sic::{
    a_for_t, build_general_sic, gsic_directions, max_feasible_t_gsic, sic_qubit,
    verify_general_sic, GeneralSicPovm,
};

use num_complex::Complex64;

use crate::hermitian::{eigh, max_asymmetry, CMatrix, Observable};
use crate::report::ValidationReport;

/// Min-eigenvalue slack for positivity.
pub const POSITIVITY_TOL: f64 = 1e-12;
/// Tolerance for `Tr P = 1`, `Σ P = I` and closed-form parameter checks.
pub const NORMALIZATION_TOL: f64 = 1e-10;
/// Tolerance for the pairwise trace identities.
pub const PAIR_TRACE_TOL: f64 = 1e-9;
/// Width at which the feasible-`t` bisection stops.
pub const BISECTION_WIDTH: f64 = 1e-10;

pub(crate) fn min_eigenvalue(o: &Observable) -> f64 {
    *eigh(o)
        .eigenvalues()
        .last()
        .expect("observables have dimension at least 1")
}

/// `c·I + t·F`.
pub(crate) fn affine_element(center: f64, t: f64, direction: &Observable) -> Observable {
    let d = direction.dim();
    Observable::symmetrized(
        CMatrix::identity(d, d) * Complex64::new(center, 0.0)
            + direction.matrix() * Complex64::new(t, 0.0),
    )
}

fn spectral_norm(o: &Observable) -> f64 {
    let e = eigh(o);
    e.eigenvalues()
        .iter()
        .fold(0.0f64, |acc, l| acc.max(l.abs()))
}

fn all_positive(center: f64, t: f64, directions: &[Observable]) -> bool {
    directions
        .iter()
        .all(|f| min_eigenvalue(&affine_element(center, t, f)) >= -POSITIVITY_TOL)
}

/// Largest `t` with every `c·I + t·F_i ⪰ 0`, by doubling then bisection.
pub(crate) fn max_feasible_t(center: f64, directions: &[Observable]) -> f64 {
    let d = directions.first().map_or(1, Observable::dim) as f64;
    let norm = directions.iter().map(spectral_norm).fold(0.0f64, f64::max);
    if norm == 0.0 {
        return f64::INFINITY;
    }
    let mut lo = 0.0;
    let mut hi = 1.0 / (d * norm);
    while all_positive(center, hi, directions) {
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        if all_positive(center, mid, directions) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

pub(crate) fn max_hermiticity_residual<'a>(ops: impl IntoIterator<Item = &'a Observable>) -> f64 {
    ops.into_iter()
        .map(|o| max_asymmetry(o.matrix()))
        .fold(0.0, f64::max)
}

/// Running maximum of a residual with the location where it occurred.
pub(crate) struct Worst {
    residual: f64,
    at: String,
}

impl Worst {
    pub(crate) fn new() -> Self {
        Worst {
            residual: 0.0,
            at: String::new(),
        }
    }

    pub(crate) fn offer(&mut self, residual: f64, at: impl FnOnce() -> String) {
        if residual > self.residual || residual.is_nan() {
            self.residual = residual;
            self.at = at();
        }
    }

    pub(crate) fn record(self, report: &mut ValidationReport, name: &str, tol: f64) {
        let detail = (self.residual > tol).then_some(self.at);
        report.check(name, self.residual, tol, detail);
    }
}

