//! Orthonormal operator bases under the Hilbert-Schmidt inner product.
//!
//! The traceless family is the generalized Gell-Mann set, emitted in a fixed
//! order: symmetric pairs `(E_jk + E_kj)/√2` for `j < k` lexicographically,
//! antisymmetric pairs `-i(E_jk - E_kj)/√2` in the same order, then the
//! diagonal operators `diag(1, …, 1, -l, 0, …, 0)/√(l(l+1))` for
//! `l = 1..d-1`. For `d = 2` this is `σx/√2, σy/√2, σz/√2`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{max_asymmetry, CMatrix, Observable};
use crate::report::ValidationReport;

pub const ORTHONORMALITY_TOL: f64 = 1e-10;
pub const TRACELESS_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct OperatorBasis {
    dim: usize,
    operators: Vec<Observable>,
    traceless: bool,
}

impl OperatorBasis {
    /// Wraps arbitrary operators; use [`verify_basis`] to certify them.
    pub fn from_operators(dim: usize, operators: Vec<Observable>, traceless: bool) -> Result<Self> {
        for op in &operators {
            crate::hermitian::check_same_dim(dim, op.dim())?;
        }
        Ok(OperatorBasis {
            dim,
            operators,
            traceless,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operators(&self) -> &[Observable] {
        &self.operators
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn is_traceless(&self) -> bool {
        self.traceless
    }

    /// `{U O_i U†}`; orthonormality is preserved for unitary `U`.
    pub fn conjugate_by(&self, u: &CMatrix) -> OperatorBasis {
        OperatorBasis {
            dim: self.dim,
            operators: self.operators.iter().map(|o| o.conjugate_by(u)).collect(),
            traceless: self.traceless,
        }
    }
}

fn unit(d: usize, entries: &[(usize, usize, Complex64)]) -> Observable {
    let mut m = CMatrix::zeros(d, d);
    for &(i, j, z) in entries {
        m[(i, j)] = z;
    }
    Observable::symmetrized(m)
}

/// The `d² − 1` generalized Gell-Mann operators, normalized to `Tr(F_i F_j) = δ_ij`.
pub fn gell_mann_basis(d: usize) -> Result<OperatorBasis> {
    if d < 2 {
        return Err(Error::domain("dimension", format!("d = {d}, need d >= 2")));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let pairs: Vec<(usize, usize)> = (0..d)
        .flat_map(|j| (j + 1..d).map(move |k| (j, k)))
        .collect();
    let mut ops = Vec::with_capacity(d * d - 1);
    for &(j, k) in &pairs {
        let v = Complex64::new(s, 0.0);
        ops.push(unit(d, &[(j, k, v), (k, j, v)]));
    }
    for &(j, k) in &pairs {
        ops.push(unit(
            d,
            &[(j, k, Complex64::new(0.0, -s)), (k, j, Complex64::new(0.0, s))],
        ));
    }
    for l in 1..d {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut diag = vec![0.0; d];
        for x in diag.iter_mut().take(l) {
            *x = norm;
        }
        diag[l] = -(l as f64) * norm;
        ops.push(Observable::from_real_diagonal(&diag));
    }
    Ok(OperatorBasis {
        dim: d,
        operators: ops,
        traceless: true,
    })
}

/// Complete orthonormal basis of all observables: Gell-Mann operators then `I/√d`.
pub fn observable_basis(d: usize) -> Result<OperatorBasis> {
    if d == 0 {
        return Err(Error::domain("dimension", "d must be at least 1"));
    }
    let mut ops = if d >= 2 {
        gell_mann_basis(d)?.operators
    } else {
        Vec::new()
    };
    ops.push(Observable::identity(d).scale(1.0 / (d as f64).sqrt()));
    Ok(OperatorBasis {
        dim: d,
        operators: ops,
        traceless: false,
    })
}

/// Grouping of the `d² − 1` traceless operators into `d + 1` groups of `d − 1`.
/// Indices are 0-based positions in the traceless basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MumPartition {
    dim: usize,
    groups: Vec<Vec<usize>>,
}

impl MumPartition {
    /// Validates that `groups` partitions `0..d²−1` into `d + 1` blocks of `d − 1`.
    pub fn new(dim: usize, groups: Vec<Vec<usize>>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::domain("dimension", format!("d = {dim}, need d >= 2")));
        }
        if groups.len() != dim + 1 {
            return Err(Error::domain(
                "partition",
                format!("{} groups, expected {}", groups.len(), dim + 1),
            ));
        }
        let total = dim * dim - 1;
        let mut seen = vec![false; total];
        for (b, group) in groups.iter().enumerate() {
            if group.len() != dim - 1 {
                return Err(Error::domain(
                    "partition",
                    format!("group {b} has {} operators, expected {}", group.len(), dim - 1),
                ));
            }
            for &i in group {
                if i >= total || seen[i] {
                    return Err(Error::domain(
                        "partition",
                        format!("index {i} out of range or repeated"),
                    ));
                }
                seen[i] = true;
            }
        }
        Ok(MumPartition { dim, groups })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }
}

/// Lexicographic blocks: group `b` takes indices `b(d−1) .. (b+1)(d−1)`.
pub fn default_partition(d: usize) -> Result<MumPartition> {
    if d < 2 {
        return Err(Error::domain("dimension", format!("d = {d}, need d >= 2")));
    }
    let groups = (0..=d)
        .map(|b| (b * (d - 1)..(b + 1) * (d - 1)).collect())
        .collect();
    MumPartition::new(d, groups)
}

/// Orthonormality, trace and hermiticity residuals of a basis.
pub fn verify_basis(basis: &OperatorBasis) -> ValidationReport {
    let ops = basis.operators();
    let mut report = ValidationReport::new(ops.len());
    if ops.is_empty() {
        report.note("empty basis: holds vacuously, count = 0");
    }
    let expected = if basis.is_traceless() {
        basis.dim() * basis.dim() - 1
    } else {
        basis.dim() * basis.dim()
    };
    if ops.len() != expected {
        report.note(format!(
            "count {} differs from the complete count {expected}",
            ops.len()
        ));
    }

    let mut worst = 0.0f64;
    let mut worst_pair = None;
    for i in 0..ops.len() {
        for j in i..ops.len() {
            let target = if i == j { 1.0 } else { 0.0 };
            let r = (ops[i].hs_inner(&ops[j]) - target).abs();
            if r > worst {
                worst = r;
                worst_pair = Some((i, j));
            }
        }
    }
    let detail = worst_pair
        .filter(|_| worst > ORTHONORMALITY_TOL)
        .map(|(i, j)| format!("pair ({i}, {j})"));
    report.check("orthonormality", worst, ORTHONORMALITY_TOL, detail);

    if basis.is_traceless() {
        let (tr, idx) = ops
            .iter()
            .enumerate()
            .map(|(i, o)| (o.trace().abs(), i))
            .fold((0.0, 0), |a, b| if b.0 > a.0 { b } else { a });
        let detail = (tr > TRACELESS_TOL).then(|| format!("operator {idx}"));
        report.check("traceless", tr, TRACELESS_TOL, detail);
    }

    let herm = ops
        .iter()
        .map(|o| max_asymmetry(o.matrix()))
        .fold(0.0, f64::max);
    report.check("hermiticity", herm, crate::hermitian::HERMITICITY_TOL, None);
    report
}
