//! JSON matrix interchange: `{"dim": d, "re": [[...]], "im": [[...]]}`,
//! row-major `d × d` arrays of doubles.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{CMatrix, DensityMatrix, Observable};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let d = m.nrows();
        let rows = |f: fn(&Complex64) -> f64| {
            (0..d)
                .map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect())
                .collect()
        };
        MatrixJson {
            dim: d,
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        let d = self.dim;
        if d == 0 {
            return Err(Error::Interchange("dim must be at least 1".into()));
        }
        for (name, part) in [("re", &self.re), ("im", &self.im)] {
            if part.len() != d || part.iter().any(|row| row.len() != d) {
                return Err(Error::Interchange(format!(
                    "\"{name}\" is not a {d}x{d} array"
                )));
            }
            if part.iter().flatten().any(|x| !x.is_finite()) {
                return Err(Error::Interchange(format!(
                    "\"{name}\" has non-finite entries"
                )));
            }
        }
        Ok(CMatrix::from_fn(d, d, |i, j| {
            Complex64::new(self.re[i][j], self.im[i][j])
        }))
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Interchange(e.to_string()))
    }
}

pub fn load_observable(text: &str) -> Result<Observable> {
    Observable::new(MatrixJson::parse(text)?.to_matrix()?)
}

pub fn load_density(text: &str) -> Result<DensityMatrix> {
    DensityMatrix::new(MatrixJson::parse(text)?.to_matrix()?)
}

/// Basis dump entry: the 1-based index plus the matrix fields.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexedMatrixJson {
    pub index: usize,
    #[serde(flatten)]
    pub matrix: MatrixJson,
}
