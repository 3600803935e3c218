//! Named states: the two-qubit Werner family and small fixtures.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{CMatrix, DensityMatrix, Observable};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WernerParams {
    p: f64,
}

impl WernerParams {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::domain("Werner parameter", format!("p = {p} not in [0, 1]")));
        }
        Ok(WernerParams { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// The 4×4 Werner state with diagonal `(p/3, (3−2p)/6, (3−2p)/6, p/3)` and
/// central coherence `(4p−3)/6`. Spectrum `{p/3, p/3, p/3, 1−p}`.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    let p = WernerParams::new(p)?.p();
    let r = |x: f64| Complex64::new(x, 0.0);
    let outer = p / 3.0;
    let inner = (3.0 - 2.0 * p) / 6.0;
    let coherence = (4.0 * p - 3.0) / 6.0;
    let mut m = CMatrix::zeros(4, 4);
    m[(0, 0)] = r(outer);
    m[(1, 1)] = r(inner);
    m[(2, 2)] = r(inner);
    m[(3, 3)] = r(outer);
    m[(1, 2)] = r(coherence);
    m[(2, 1)] = r(coherence);
    DensityMatrix::new(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum NamedState {
    MaximallyMixed { dim: usize },
    PureComputational { dim: usize },
    TwoLevel { lambda: f64 },
    Werner { p: f64 },
}

impl NamedState {
    pub fn build(&self) -> Result<DensityMatrix> {
        named_state(*self)
    }
}

pub fn named_state(name: NamedState) -> Result<DensityMatrix> {
    match name {
        NamedState::MaximallyMixed { dim } => DensityMatrix::maximally_mixed(dim),
        NamedState::PureComputational { dim } => {
            if dim == 0 {
                return Err(Error::domain("dimension", "d must be at least 1"));
            }
            let mut diag = vec![0.0; dim];
            diag[0] = 1.0;
            DensityMatrix::new(Observable::from_real_diagonal(&diag).into_matrix())
        }
        NamedState::TwoLevel { lambda } => {
            if !(0.0..=1.0).contains(&lambda) {
                return Err(Error::domain("two-level weight", format!("λ = {lambda} not in [0, 1]")));
            }
            DensityMatrix::new(Observable::from_real_diagonal(&[lambda, 1.0 - lambda]).into_matrix())
        }
        NamedState::Werner { p } => werner(p),
    }
}
