use nalgebra::DVector;
use num_complex::Complex64;

use super::{MumSet, Worst, NORMALIZATION_TOL, PAIR_TRACE_TOL};
use crate::error::{Error, Result};
use crate::hermitian::{CMatrix, Observable};
use crate::report::ValidationReport;

/// Complete set of `d + 1` mutually unbiased bases, stored as state vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct MubSet {
    dim: usize,
    bases: Vec<Vec<DVector<Complex64>>>,
}

impl MubSet {
    pub fn from_parts(dim: usize, bases: Vec<Vec<DVector<Complex64>>>) -> Self {
        MubSet { dim, bases }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bases(&self) -> &[Vec<DVector<Complex64>>] {
        &self.bases
    }
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
}

/// Computational basis plus, for odd prime `d`, the `d` quadratic-phase bases
/// `⟨k|b_j^{(m)}⟩ = ω^{jk + mk²}/√d`; for `d = 2`, the σx and σy eigenbases.
pub fn build_mubs_prime(d: usize) -> Result<MubSet> {
    if !is_prime(d) {
        return Err(Error::UnsupportedDimension {
            dim: d,
            reason: "explicit MUBs are built for prime dimensions only",
        });
    }
    let zero = Complex64::new(0.0, 0.0);
    let computational: Vec<DVector<Complex64>> = (0..d)
        .map(|j| DVector::from_fn(d, |k, _| if k == j { Complex64::new(1.0, 0.0) } else { zero }))
        .collect();
    let mut bases = vec![computational];
    let norm = 1.0 / (d as f64).sqrt();
    if d == 2 {
        let r = Complex64::new(norm, 0.0);
        let i = Complex64::new(0.0, norm);
        bases.push(vec![DVector::from_vec(vec![r, r]), DVector::from_vec(vec![r, -r])]);
        bases.push(vec![DVector::from_vec(vec![r, i]), DVector::from_vec(vec![r, -i])]);
    } else {
        let omega = |n: usize| {
            let phase = 2.0 * std::f64::consts::PI * (n % d) as f64 / d as f64;
            Complex64::from_polar(norm, phase)
        };
        for m in 0..d {
            bases.push(
                (0..d)
                    .map(|j| DVector::from_fn(d, |k, _| omega(j * k + m * k * k)))
                    .collect(),
            );
        }
    }
    let set = MubSet { dim: d, bases };
    let report = verify_mub(&set);
    if !report.holds {
        return Err(Error::Certification(report.summary()));
    }
    Ok(set)
}

/// Orthonormality within each basis and `|⟨b|b'⟩| = 1/√d` across bases.
pub fn verify_mub(m: &MubSet) -> ValidationReport {
    let d = m.dim;
    let mut report = ValidationReport::new(m.bases.len());
    let target = 1.0 / (d as f64).sqrt();
    let mut ortho = Worst::new();
    let mut unbiased = Worst::new();
    for (b, x) in m.bases.iter().enumerate() {
        for (c, y) in m.bases.iter().enumerate().skip(b) {
            for (k, u) in x.iter().enumerate() {
                for (l, v) in y.iter().enumerate() {
                    let overlap = u.dotc(v).norm();
                    let at = || format!("basis {b} vector {k} vs basis {c} vector {l}");
                    if b == c {
                        let want = if k == l { 1.0 } else { 0.0 };
                        ortho.offer((overlap - want).abs(), at);
                    } else {
                        unbiased.offer((overlap - target).abs(), at);
                    }
                }
            }
        }
    }
    ortho.record(&mut report, "orthonormality", NORMALIZATION_TOL);
    unbiased.record(&mut report, "unbiasedness", PAIR_TRACE_TOL);
    report
}

/// Rank-one projector MUMs `P_k^{(b)} = |b_k⟩⟨b_k|`, with `κ = 1` and no `t`.
pub fn mub_to_projector_mum(m: &MubSet) -> MumSet {
    let povms = m
        .bases
        .iter()
        .map(|basis| {
            basis
                .iter()
                .map(|v| {
                    let p: CMatrix = v * v.adjoint();
                    Observable::symmetrized(p)
                })
                .collect()
        })
        .collect();
    MumSet::from_parts(m.dim, None, 1.0, povms, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measurements::verify_mum;

    #[test]
    fn primes() {
        let ps: Vec<usize> = (0..20).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn qubit_and_qutrit_mubs() {
        for d in [2, 3, 5, 7] {
            let m = build_mubs_prime(d).unwrap();
            assert_eq!(m.bases().len(), d + 1);
            let r = verify_mub(&m);
            assert!(r.holds);
            assert!(r.residual("unbiasedness").unwrap() <= 1e-10);
        }
    }

    #[test]
    fn non_prime_unsupported() {
        assert!(matches!(build_mubs_prime(4), Err(Error::UnsupportedDimension { dim: 4, .. })));
        assert!(build_mubs_prime(1).is_err());
        assert!(build_mubs_prime(6).is_err());
    }

    #[test]
    fn projector_mums_have_unit_kappa() {
        for d in [2, 3] {
            let mum = mub_to_projector_mum(&build_mubs_prime(d).unwrap());
            let r = verify_mum(&mum);
            assert!(r.holds, "{}", r.summary());
            assert_eq!(mum.t(), None);
            let p = &mum.povms()[0][0];
            assert!((p.hs_inner(p) - 1.0).abs() <= 1e-10);
        }
        let mum = mub_to_projector_mum(&build_mubs_prime(2).unwrap());
        for b in 0..3 {
            for c in 0..3 {
                if b != c {
                    for x in &mum.povms()[b] {
                        for y in &mum.povms()[c] {
                            assert!((x.hs_inner(y) - 0.5).abs() <= 1e-15);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn broken_basis_fails() {
        let m = build_mubs_prime(3).unwrap();
        let mut bases = m.bases().to_vec();
        bases[2][1] = bases[1][1].clone();
        assert!(!verify_mub(&MubSet::from_parts(3, bases)).holds);
    }
}
