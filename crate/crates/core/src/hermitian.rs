//! Dense Hermitian linear algebra.
//!
//! Observables and density matrices are thin validated wrappers around
//! `nalgebra::DMatrix<Complex64>`. Every fractional power goes through a
//! single eigendecomposition, with the convention `λ^0 = 1` for every
//! eigenvalue including zero, so `ρ^0 = I` on every state.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Max entry asymmetry accepted as Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Per-dimension eigenvalue window snapped to zero: `|λ| ≤ d · EIGEN_CLAMP_TOL`.
pub const EIGEN_CLAMP_TOL: f64 = 1e-12;
/// Accepted deviation of `Tr ρ` from one.
pub const TRACE_TOL: f64 = 1e-10;

/// Largest `|m_ij - conj(m_ji)|`.
pub fn max_asymmetry(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Largest absolute entry.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

/// `Tr(AB)` without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

fn check_square(m: &CMatrix) -> Result<()> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(())
}

pub(crate) fn check_same_dim(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::DimensionMismatch { left, right });
    }
    Ok(())
}

/// A Hermitian matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable(CMatrix);

impl Observable {
    /// Validates hermiticity and stores the symmetrized matrix `(H + H†)/2`.
    pub fn new(m: CMatrix) -> Result<Self> {
        check_square(&m)?;
        let asymmetry = max_asymmetry(&m);
        if asymmetry > HERMITICITY_TOL {
            return Err(Error::NotHermitian { asymmetry });
        }
        Ok(Self::symmetrized(m))
    }

    /// Symmetrizes without checking; only for matrices Hermitian by construction.
    pub(crate) fn symmetrized(m: CMatrix) -> Self {
        let adj = m.adjoint();
        Observable((m + adj) * Complex64::new(0.5, 0.0))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d = diag.len();
        let mut m = CMatrix::zeros(d, d);
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(x, 0.0);
        }
        Observable(m)
    }

    pub fn identity(d: usize) -> Self {
        Observable(identity(d))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    /// `Tr(H)`, real for Hermitian input.
    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// Hilbert-Schmidt inner product `Tr(self · other)`.
    pub fn hs_inner(&self, other: &Observable) -> f64 {
        trace_product(&self.0, &other.0).re
    }

    /// `U · H · U†`.
    pub fn conjugate_by(&self, u: &CMatrix) -> Observable {
        Observable::symmetrized(u * &self.0 * u.adjoint())
    }

    pub fn scale(&self, s: f64) -> Observable {
        Observable(&self.0 * Complex64::new(s, 0.0))
    }

    /// Pauli matrices, handy in tests and the CLI.
    pub fn pauli_x() -> Self {
        let z = Complex64::new(0.0, 0.0);
        let o = Complex64::new(1.0, 0.0);
        Observable(CMatrix::from_row_slice(2, 2, &[z, o, o, z]))
    }

    pub fn pauli_y() -> Self {
        let z = Complex64::new(0.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        Observable(CMatrix::from_row_slice(2, 2, &[z, -i, i, z]))
    }

    pub fn pauli_z() -> Self {
        Observable::from_real_diagonal(&[1.0, -1.0])
    }
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: CMatrix,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Columns are eigenvectors, in the order of [`Spectrum::eigenvalues`].
    pub fn eigenvectors(&self) -> &CMatrix {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `U · diag(f(λ)) · U†`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let u = &self.eigenvectors;
        let d = self.dim();
        let mut scaled = u.clone();
        for (j, &lam) in self.eigenvalues.iter().enumerate() {
            let w = Complex64::new(f(lam), 0.0);
            for i in 0..d {
                scaled[(i, j)] *= w;
            }
        }
        scaled * u.adjoint()
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.map(|x| x)
    }
}

/// Hermitian eigendecomposition; eigenvalues sorted descending, ties kept in
/// the order the underlying solver produced them.
pub fn eigh(h: &Observable) -> Spectrum {
    let eig = nalgebra::SymmetricEigen::new(h.matrix().clone());
    let d = h.dim();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let eigenvectors = CMatrix::from_fn(d, d, |r, c| eig.eigenvectors[(r, order[c])]);
    Spectrum {
        eigenvalues,
        eigenvectors,
    }
}

/// `λ^s` with `λ^0 = 1` for every `λ ≥ 0` and `0^s = 0` for `s > 0`.
pub fn eigen_power(lambda: f64, s: f64) -> f64 {
    if s == 0.0 {
        1.0
    } else if lambda <= 0.0 {
        0.0
    } else {
        lambda.powf(s)
    }
}

/// A validated density matrix with its (clamped) spectrum.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
    spectrum: Spectrum,
}

impl DensityMatrix {
    /// Validates hermiticity, unit trace and positivity.
    ///
    /// Eigenvalues within `d · EIGEN_CLAMP_TOL` of zero are snapped to zero;
    /// anything more negative is rejected.
    pub fn new(m: CMatrix) -> Result<Self> {
        let h = Observable::new(m)?;
        let trace = h.trace();
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidTrace { trace });
        }
        let d = h.dim();
        let mut spectrum = eigh(&h);
        let window = d as f64 * EIGEN_CLAMP_TOL;
        let min = spectrum.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        if min < -window {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        for lam in spectrum.eigenvalues.iter_mut() {
            if lam.abs() <= window {
                *lam = 0.0;
            }
        }
        Ok(DensityMatrix {
            matrix: h.into_matrix(),
            spectrum,
        })
    }

    pub fn maximally_mixed(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::domain("dimension", "d must be at least 1"));
        }
        DensityMatrix::new(identity(d) * Complex64::new(1.0 / d as f64, 0.0))
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) vector.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if psi.is_empty() || norm2 == 0.0 {
            return Err(Error::domain("state vector", "zero vector"));
        }
        let d = psi.len();
        let m = CMatrix::from_fn(d, d, |i, j| psi[i] * psi[j].conj() / norm2);
        DensityMatrix::new(m)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.spectrum.eigenvalues
    }

    /// `ρ` as an observable.
    pub fn as_observable(&self) -> Observable {
        Observable(self.matrix.clone())
    }

    /// `Tr ρ^s` from the spectrum.
    pub fn trace_power(&self, s: f64) -> f64 {
        self.eigenvalues().iter().map(|&l| eigen_power(l, s)).sum()
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &CMatrix) -> Result<DensityMatrix> {
        DensityMatrix::new(u * &self.matrix * u.adjoint())
    }

    pub fn is_full_rank(&self) -> bool {
        self.eigenvalues().iter().all(|&l| l > 0.0)
    }
}

/// `ρ^s` for `s ∈ [0, 1]`.
pub fn fractional_power(rho: &DensityMatrix, s: f64) -> Result<Observable> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::domain("exponent", format!("s = {s} not in [0, 1]")));
    }
    Ok(Observable::symmetrized(
        rho.spectrum().map(|l| eigen_power(l, s)),
    ))
}

/// `XY − YX`.
pub fn commutator(x: &Observable, y: &Observable) -> Result<CMatrix> {
    check_same_dim(x.dim(), y.dim())?;
    Ok(x.matrix() * y.matrix() - y.matrix() * x.matrix())
}

fn complex_gaussian_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let mut m = CMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            m[(i, j)] = Complex64::new(re, im);
        }
    }
    m
}

/// Ginibre-ensemble density matrix `GG†/Tr(GG†)` with `G` a `d × rank`
/// matrix of standard complex Gaussians drawn from a seeded ChaCha8 stream.
pub fn random_density(d: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    if d == 0 {
        return Err(Error::domain("dimension", "d must be at least 1"));
    }
    if rank == 0 || rank > d {
        return Err(Error::domain(
            "rank",
            format!("rank = {rank} not in [1, {d}]"),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = complex_gaussian_matrix(d, rank, &mut rng);
    let w = &g * g.adjoint();
    let tr = w.trace().re;
    DensityMatrix::new(w / Complex64::new(tr, 0.0))
}

/// Haar-random unitary from the QR decomposition of a Ginibre matrix, with
/// the phases of `R`'s diagonal pushed into `Q`.
pub fn random_unitary(d: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = complex_gaussian_matrix(d, d, &mut rng);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 {
            rjj / rjj.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Random Hermitian matrix `(G + G†)/2` with standard complex Gaussian `G`.
pub fn random_hermitian(d: usize, seed: u64) -> Observable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = complex_gaussian_matrix(d, d, &mut rng);
    Observable::symmetrized(g)
}

/// Derives a per-task seed from a master seed (splitmix64 finalizer).
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eigh_identity() {
        let s = eigh(&Observable::identity(3));
        for &l in s.eigenvalues() {
            assert!((l - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn eigh_diagonal_keeps_standard_basis() {
        let s = eigh(&Observable::from_real_diagonal(&[0.25, 0.75]));
        assert_eq!(s.eigenvalues(), &[0.75, 0.25]);
        let u = s.eigenvectors();
        assert!((u[(1, 0)].norm() - 1.0).abs() < 1e-15);
        assert!((u[(0, 1)].norm() - 1.0).abs() < 1e-15);
        assert!(u[(0, 0)].norm() < 1e-15);
    }

    #[test]
    fn eigh_reconstructs_random_hermitian() {
        let h = random_hermitian(4, 7);
        let s = eigh(&h);
        assert!(max_abs(&(s.reconstruct() - h.matrix())) <= 1e-12);
        let u = s.eigenvectors();
        assert!(max_abs(&(u.adjoint() * u - identity(4))) <= 1e-12);
        assert!(s.eigenvalues().windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn non_hermitian_rejected_with_asymmetry() {
        let m = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        match Observable::new(m) {
            Err(Error::NotHermitian { asymmetry }) => assert!((asymmetry - 0.5).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn power_of_maximally_mixed_is_scalar() {
        let rho = DensityMatrix::maximally_mixed(3).unwrap();
        let p = fractional_power(&rho, 0.3).unwrap();
        let expected = identity(3) * c(3f64.powf(-0.3), 0.0);
        assert!(max_abs(&(p.matrix() - expected)) < 1e-14);
    }

    #[test]
    fn power_of_projector_is_projector() {
        let rho = DensityMatrix::pure(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let p = fractional_power(&rho, 0.5).unwrap();
        assert!(max_abs(&(p.matrix() - rho.matrix())) < 1e-15);
    }

    #[test]
    fn zeroth_power_is_identity_even_when_rank_deficient() {
        let rho = DensityMatrix::pure(&[c(0.6, 0.0), c(0.0, 0.8), c(0.0, 0.0)]).unwrap();
        let p = fractional_power(&rho, 0.0).unwrap();
        assert!(max_abs(&(p.matrix() - identity(3))) < 1e-14);
    }

    #[test]
    fn power_outside_unit_interval_is_domain_error() {
        let rho = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(matches!(fractional_power(&rho, 1.5), Err(Error::Domain { .. })));
        assert!(matches!(fractional_power(&rho, -0.1), Err(Error::Domain { .. })));
    }

    #[test]
    fn commutator_pauli_algebra() {
        let zx = commutator(&Observable::pauli_z(), &Observable::pauli_x()).unwrap();
        let expected = Observable::pauli_y().matrix() * c(0.0, 2.0);
        assert!(max_abs(&(zx - expected)) < 1e-15);
        let a = random_hermitian(3, 1);
        assert!(max_abs(&commutator(&a, &a).unwrap()) < 1e-14);
        assert!(max_abs(&commutator(&Observable::identity(3), &a).unwrap()) < 1e-14);
    }

    #[test]
    fn commutator_dimension_mismatch() {
        let err = commutator(&Observable::identity(2), &Observable::identity(3)).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { left: 2, right: 3 });
    }

    #[test]
    fn random_density_rank_one_is_pure() {
        let rho = random_density(2, 1, 1).unwrap();
        assert!((rho.eigenvalues()[0] - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn random_density_full_rank_valid() {
        let rho = random_density(4, 4, 42).unwrap();
        assert!((rho.matrix().trace().re - 1.0).abs() <= 1e-12);
        assert!(*rho.eigenvalues().last().unwrap() >= -1e-12);
    }

    #[test]
    fn random_density_is_deterministic() {
        let a = random_density(3, 2, 99).unwrap();
        let b = random_density(3, 2, 99).unwrap();
        let bits = |m: &CMatrix| m.iter().flat_map(|z| [z.re.to_bits(), z.im.to_bits()]).collect::<Vec<_>>();
        assert_eq!(bits(a.matrix()), bits(b.matrix()));
    }

    #[test]
    fn random_density_rank_out_of_range() {
        assert!(matches!(random_density(3, 0, 0), Err(Error::Domain { .. })));
        assert!(matches!(random_density(3, 4, 0), Err(Error::Domain { .. })));
    }

    #[test]
    fn density_validation_rejects_bad_trace_and_negative() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0.7, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.7, 0.0)]);
        assert!(matches!(DensityMatrix::new(m), Err(Error::InvalidTrace { .. })));
        let m = CMatrix::from_row_slice(2, 2, &[c(1.1, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.1, 0.0)]);
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn random_unitary_is_unitary() {
        let u = random_unitary(5, 3);
        assert!(max_abs(&(u.adjoint() * &u - identity(5))) < 1e-12);
    }
}
