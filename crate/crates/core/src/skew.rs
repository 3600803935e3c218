//! Skew informations and the quantum uncertainties built from them.
//!
//! Every quantity has two independent evaluation paths: an operator path
//! (commutator traces, or a sum over a complete observable basis) and a
//! trace/spectral path. The spectral value is the one returned; the operator
//! value rides along as a cross-check.

use serde::{Deserialize, Serialize};

use crate::bases::observable_basis;
use crate::error::{Error, Result};
use crate::hermitian::{
    check_same_dim, eigen_power, fractional_power, trace_product, CMatrix, DensityMatrix,
    Observable,
};

/// Slack applied to the exponent-region inequalities.
pub const REGION_TOL: f64 = 1e-12;
/// Round-off floor below which a provably nonnegative value reports as zero.
pub const NONNEGATIVE_FLOOR: f64 = 1e-12;
/// Allowed disagreement between the two evaluation paths of an uncertainty.
pub const DUAL_FORM_TOL: f64 = 1e-8;

/// Exponents `(α, β)` of the generalized skew information.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentPair {
    pub alpha: f64,
    pub beta: f64,
}

impl ExponentPair {
    pub const fn new(alpha: f64, beta: f64) -> Self {
        ExponentPair { alpha, beta }
    }

    /// `α, β ≥ 0`, `α + β ≤ 1`.
    pub fn in_equality_region(&self) -> bool {
        self.alpha.is_finite()
            && self.beta.is_finite()
            && self.alpha >= 0.0
            && self.beta >= 0.0
            && self.alpha + self.beta <= 1.0 + REGION_TOL
    }

    /// `α, β ∈ [0, 1]`, `α + 2β ≤ 1`, `2α + β ≤ 1`.
    pub fn in_inequality_region(&self) -> bool {
        self.in_equality_region()
            && self.alpha + 2.0 * self.beta <= 1.0 + REGION_TOL
            && 2.0 * self.alpha + self.beta <= 1.0 + REGION_TOL
    }

    /// `1 − α − β`, snapped to zero inside the region tolerance.
    pub fn remainder(&self) -> f64 {
        let g = 1.0 - self.alpha - self.beta;
        if g.abs() <= REGION_TOL {
            0.0
        } else {
            g
        }
    }

    /// True when `α + β = 1`, where `0^0 = 1` enters the spectral weights.
    pub fn on_unit_boundary(&self) -> bool {
        self.remainder() == 0.0
    }

    pub fn swapped(&self) -> Self {
        ExponentPair::new(self.beta, self.alpha)
    }

    pub fn require_equality_region(&self) -> Result<()> {
        if self.in_equality_region() {
            Ok(())
        } else {
            Err(Error::domain(
                "exponent pair",
                format!(
                    "(α, β) = ({}, {}) violates α, β ≥ 0, α + β ≤ 1",
                    self.alpha, self.beta
                ),
            ))
        }
    }

    pub fn require_inequality_region(&self) -> Result<()> {
        if self.in_inequality_region() {
            Ok(())
        } else {
            Err(Error::domain(
                "exponent pair",
                format!(
                    "(α, β) = ({}, {}) violates α + 2β ≤ 1, 2α + β ≤ 1",
                    self.alpha, self.beta
                ),
            ))
        }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::domain("alpha", format!("α = {alpha} not in [0, 1]")))
    }
}

fn clamp_nonnegative(what: &str, value: f64, scale: f64) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value >= -NONNEGATIVE_FLOOR * scale.max(1.0) {
        Ok(0.0)
    } else {
        Err(Error::Consistency {
            what: format!("{what} is negative"),
            residual: value,
        })
    }
}

fn re_trace4(a: &CMatrix, b: &CMatrix, c: &CMatrix, d: &CMatrix) -> f64 {
    trace_product(&(a * b), &(c * d)).re
}

/// The two evaluation routes of `I^{α,β}_ρ(A)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkewForms {
    /// `−½ Tr([ρ^α, A][ρ^β, A] ρ^{1−α−β})`.
    pub commutator_form: f64,
    /// `½[Tr(ρA²) + Tr(ρ^{α+β}Aρ^{1−α−β}A) − Tr(ρ^αAρ^{1−α}A) − Tr(ρ^βAρ^{1−β}A)]`.
    pub trace_form: f64,
}

impl SkewForms {
    pub fn residual(&self) -> f64 {
        (self.commutator_form - self.trace_form).abs()
    }
}

/// Fractional powers of one state for one exponent pair, reused across many
/// observables.
#[derive(Clone, Debug)]
pub struct SkewEvaluator {
    dim: usize,
    rho: CMatrix,
    p_alpha: CMatrix,
    p_beta: CMatrix,
    p_sum: CMatrix,
    p_rest: CMatrix,
    p_co_alpha: CMatrix,
    p_co_beta: CMatrix,
}

impl SkewEvaluator {
    pub fn new(rho: &DensityMatrix, ab: ExponentPair) -> Result<Self> {
        ab.require_equality_region()?;
        let alpha = ab.alpha;
        let beta = ab.beta;
        let rest = ab.remainder();
        let sum = (1.0 - rest).clamp(0.0, 1.0);
        let pow = |s: f64| fractional_power(rho, s.clamp(0.0, 1.0)).map(Observable::into_matrix);
        Ok(SkewEvaluator {
            dim: rho.dim(),
            rho: rho.matrix().clone(),
            p_alpha: pow(alpha)?,
            p_beta: pow(beta)?,
            p_sum: pow(sum)?,
            p_rest: pow(rest)?,
            p_co_alpha: pow(1.0 - alpha)?,
            p_co_beta: pow(1.0 - beta)?,
        })
    }

    /// Trace form, unclamped.
    pub fn trace_form(&self, a: &Observable) -> Result<f64> {
        check_same_dim(self.dim, a.dim())?;
        let a = a.matrix();
        let t1 = trace_product(&self.rho, &(a * a)).re;
        let t2 = re_trace4(&self.p_sum, a, &self.p_rest, a);
        let t3 = re_trace4(&self.p_alpha, a, &self.p_co_alpha, a);
        let t4 = re_trace4(&self.p_beta, a, &self.p_co_beta, a);
        Ok(0.5 * (t1 + t2 - t3 - t4))
    }

    /// Commutator form, unclamped.
    pub fn commutator_form(&self, a: &Observable) -> Result<f64> {
        check_same_dim(self.dim, a.dim())?;
        let a = a.matrix();
        let ca = &self.p_alpha * a - a * &self.p_alpha;
        let cb = &self.p_beta * a - a * &self.p_beta;
        Ok(-0.5 * trace_product(&(ca * cb), &self.p_rest).re)
    }

    pub fn forms(&self, a: &Observable) -> Result<SkewForms> {
        Ok(SkewForms {
            commutator_form: self.commutator_form(a)?,
            trace_form: self.trace_form(a)?,
        })
    }

    /// Clamped trace-form value.
    pub fn skew(&self, a: &Observable) -> Result<f64> {
        let v = self.trace_form(a)?;
        let scale = trace_product(&self.rho, &(a.matrix() * a.matrix())).re;
        clamp_nonnegative("skew information", v, scale)
    }

    /// Σ over a family of observables of the trace form.
    pub fn sum<'a>(&self, ops: impl IntoIterator<Item = &'a Observable>) -> Result<f64> {
        ops.into_iter().map(|a| self.trace_form(a)).sum()
    }
}

/// Generalized skew information `I^{α,β}_ρ(A)` (trace form).
pub fn gwyd_skew(rho: &DensityMatrix, a: &Observable, ab: ExponentPair) -> Result<f64> {
    check_same_dim(rho.dim(), a.dim())?;
    SkewEvaluator::new(rho, ab)?.skew(a)
}

/// Both evaluation routes of `I^{α,β}_ρ(A)`.
pub fn gwyd_skew_forms(rho: &DensityMatrix, a: &Observable, ab: ExponentPair) -> Result<SkewForms> {
    check_same_dim(rho.dim(), a.dim())?;
    SkewEvaluator::new(rho, ab)?.forms(a)
}

/// Wigner-Yanase-Dyson skew information `−½ Tr([ρ^α, A][ρ^{1−α}, A])`.
pub fn wyd_skew(rho: &DensityMatrix, a: &Observable, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_same_dim(rho.dim(), a.dim())?;
    let pa = fractional_power(rho, alpha)?;
    let pb = fractional_power(rho, 1.0 - alpha)?;
    let ca = crate::hermitian::commutator(&pa, a)?;
    let cb = crate::hermitian::commutator(&pb, a)?;
    let v = -0.5 * trace_product(&ca, &cb).re;
    let scale = trace_product(rho.matrix(), &(a.matrix() * a.matrix())).re;
    clamp_nonnegative("WYD skew information", v, scale)
}

/// Wigner-Yanase skew information `−½ Tr([√ρ, A]²)`.
pub fn wy_skew(rho: &DensityMatrix, a: &Observable) -> Result<f64> {
    check_same_dim(rho.dim(), a.dim())?;
    let root = fractional_power(rho, 0.5)?;
    let c = crate::hermitian::commutator(&root, a)?;
    let v = -0.5 * trace_product(&c, &c).re;
    let scale = trace_product(rho.matrix(), &(a.matrix() * a.matrix())).re;
    clamp_nonnegative("WY skew information", v, scale)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    OperatorSum,
    Spectral,
}

/// A quantum uncertainty with both evaluation paths.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyValue {
    pub value: f64,
    pub method: Method,
    pub operator_sum: f64,
    pub residual: f64,
}

fn uncertainty(what: &str, spectral: f64, operator_sum: f64) -> Result<UncertaintyValue> {
    let residual = (spectral - operator_sum).abs();
    if residual.is_nan() || residual > DUAL_FORM_TOL * spectral.abs().max(1.0) {
        return Err(Error::Consistency {
            what: format!("{what}: operator-sum and spectral forms disagree"),
            residual,
        });
    }
    Ok(UncertaintyValue {
        value: clamp_nonnegative(what, spectral, 1.0)?,
        method: Method::Spectral,
        operator_sum,
        residual,
    })
}

/// `Q(ρ) = d − (Tr √ρ)²`, cross-checked against `Σ_i I_ρ(K_i)`.
pub fn q_uncertainty(rho: &DensityMatrix) -> Result<UncertaintyValue> {
    let d = rho.dim() as f64;
    let spectral = d - rho.trace_power(0.5).powi(2);
    let ev = SkewEvaluator::new(rho, ExponentPair::new(0.5, 0.5))?;
    let basis = observable_basis(rho.dim())?;
    uncertainty("Q", spectral, ev.sum(basis.operators())?)
}

/// `Q_α(ρ) = d − Tr ρ^α · Tr ρ^{1−α}`, cross-checked against `Σ_i I^α_ρ(K_i)`.
pub fn q_alpha_uncertainty(rho: &DensityMatrix, alpha: f64) -> Result<UncertaintyValue> {
    check_alpha(alpha)?;
    let d = rho.dim() as f64;
    let spectral = d - rho.trace_power(alpha) * rho.trace_power(1.0 - alpha);
    let ev = SkewEvaluator::new(rho, ExponentPair::new(alpha, 1.0 - alpha))?;
    let basis = observable_basis(rho.dim())?;
    uncertainty("Q_alpha", spectral, ev.sum(basis.operators())?)
}

/// `Σ_{i,j} (λ_i^α − λ_j^α)(λ_i^β − λ_j^β)(λ_i^γ + λ_j^γ)` over `i < j` or the full square.
fn spectral_pair_sum(eigs: &[f64], ab: ExponentPair, full_square: bool) -> f64 {
    let gamma = ab.remainder();
    let mut acc = 0.0;
    for (i, &li) in eigs.iter().enumerate() {
        let start = if full_square { 0 } else { i + 1 };
        for &lj in &eigs[start..] {
            let da = eigen_power(li, ab.alpha) - eigen_power(lj, ab.alpha);
            let db = eigen_power(li, ab.beta) - eigen_power(lj, ab.beta);
            let w = eigen_power(li, gamma) + eigen_power(lj, gamma);
            acc += da * db * w;
        }
    }
    acc
}

/// Spectral form of `Q^{α,β}(ρ)` alone.
pub fn q_gwyd_spectral(rho: &DensityMatrix, ab: ExponentPair) -> Result<f64> {
    ab.require_equality_region()?;
    Ok(0.5 * spectral_pair_sum(rho.eigenvalues(), ab, false))
}

/// `Q^{α,β}(ρ)` from the spectrum, cross-checked against `Σ_i I^{α,β}_ρ(K_i)`.
pub fn q_gwyd_uncertainty(rho: &DensityMatrix, ab: ExponentPair) -> Result<UncertaintyValue> {
    let spectral = q_gwyd_spectral(rho, ab)?;
    let ev = SkewEvaluator::new(rho, ab)?;
    let basis = observable_basis(rho.dim())?;
    uncertainty("Q^{alpha,beta}", spectral, ev.sum(basis.operators())?)
}

/// The Fisher-information-type uncertainty
/// `(1/(2αβ)) Σ_{i,j} (λ_i^α − λ_j^α)(λ_i^β − λ_j^β)(λ_i^{1−α−β} + λ_j^{1−α−β})`.
pub fn remark_quantity(rho: &DensityMatrix, ab: ExponentPair) -> Result<f64> {
    if !(ab.alpha > 0.0 && ab.beta > 0.0) {
        return Err(Error::domain(
            "exponent pair",
            format!("(α, β) = ({}, {}) needs α > 0 and β > 0", ab.alpha, ab.beta),
        ));
    }
    ab.require_equality_region()?;
    Ok(spectral_pair_sum(rho.eigenvalues(), ab, true) / (2.0 * ab.alpha * ab.beta))
}

/// `½(d − Tr ρ^α · Tr ρ^{1−α})`, the complementarity bound on `Q^{α,β}`.
pub fn complementarity_bound(rho: &DensityMatrix, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let d = rho.dim() as f64;
    Ok(0.5 * (d - rho.trace_power(alpha) * rho.trace_power(1.0 - alpha)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{random_density, random_hermitian, random_unitary};

    fn two_level() -> DensityMatrix {
        DensityMatrix::new(Observable::from_real_diagonal(&[0.75, 0.25]).into_matrix()).unwrap()
    }

    #[test]
    fn exponent_regions() {
        assert!(ExponentPair::new(0.5, 0.5).in_equality_region());
        assert!(!ExponentPair::new(0.5, 0.5).in_inequality_region());
        assert!(ExponentPair::new(5.0 / 12.0, 1.0 / 6.0).in_inequality_region());
        assert!(ExponentPair::new(1.0 / 3.0, 1.0 / 4.0).in_inequality_region());
        assert!(!ExponentPair::new(-0.1, 0.2).in_equality_region());
        assert!(!ExponentPair::new(0.6, 0.5).in_equality_region());
        assert!(!ExponentPair::new(f64::NAN, 0.1).in_equality_region());
    }

    #[test]
    fn wy_vanishes_on_commuting_inputs() {
        let a = random_hermitian(3, 2);
        assert_eq!(wy_skew(&DensityMatrix::maximally_mixed(3).unwrap(), &a).unwrap(), 0.0);
        let diag = Observable::from_real_diagonal(&[1.0, -2.0]);
        assert!(wy_skew(&two_level(), &diag).unwrap() < 1e-15);
    }

    #[test]
    fn wy_of_pure_state_is_variance() {
        for seed in 0..20 {
            let rho = random_density(3, 1, 1000 + seed).unwrap();
            let a = random_hermitian(3, 2000 + seed);
            // variance oracle: <A²> − <A>² with ψ the top eigenvector
            let u = rho.spectrum().eigenvectors();
            let psi = u.column(0);
            let a_psi = a.matrix() * psi;
            let mean = psi.dotc(&a_psi).re;
            let second = a_psi.dotc(&a_psi).re;
            let var = second - mean * mean;
            let wy = wy_skew(&rho, &a).unwrap();
            assert!((wy - var).abs() < 1e-10 * var.max(1.0), "seed {seed}: {wy} vs {var}");
        }
    }

    #[test]
    fn wyd_reductions() {
        let rho = random_density(3, 3, 4).unwrap();
        let a = random_hermitian(3, 5);
        let wy = wy_skew(&rho, &a).unwrap();
        assert!((wyd_skew(&rho, &a, 0.5).unwrap() - wy).abs() <= 1e-12);
        assert_eq!(wyd_skew(&rho, &a, 0.0).unwrap(), 0.0);
        let x = wyd_skew(&rho, &a, 0.3).unwrap();
        let y = wyd_skew(&rho, &a, 0.7).unwrap();
        assert!((x - y).abs() <= 1e-12);
        assert!(matches!(wyd_skew(&rho, &a, 1.2), Err(Error::Domain { .. })));
    }

    #[test]
    fn wyd_two_level_closed_form() {
        // 1 − (λ1^{1/4} λ2^{3/4} + λ1^{3/4} λ2^{1/4}) at λ = (3/4, 1/4), evaluated with numpy:
        let expected = 0.10110473252318242;
        let v = wyd_skew(&two_level(), &Observable::pauli_x(), 0.25).unwrap();
        assert!((v - expected).abs() <= 1e-14, "{v}");
    }

    #[test]
    fn gwyd_two_level_closed_form() {
        // (1/2)[1 + (λ1^{7/12}λ2^{5/12} + λ1^{5/12}λ2^{7/12}) − (λ1^{1/3}λ2^{2/3} + λ1^{2/3}λ2^{1/3})
        //      − (λ1^{1/4}λ2^{3/4} + λ1^{3/4}λ2^{1/4})], evaluated with numpy:
        let expected = 0.04508932928854059;
        let ab = ExponentPair::new(1.0 / 3.0, 1.0 / 4.0);
        let v = gwyd_skew(&two_level(), &Observable::pauli_x(), ab).unwrap();
        assert!((v - expected).abs() <= 1e-14, "{v}");
        let forms = gwyd_skew_forms(&two_level(), &Observable::pauli_x(), ab).unwrap();
        assert!(forms.residual() <= 1e-12);
    }

    #[test]
    fn gwyd_reductions() {
        let rho = random_density(4, 4, 8).unwrap();
        let a = random_hermitian(4, 9);
        let wy = wy_skew(&rho, &a).unwrap();
        let g = gwyd_skew(&rho, &a, ExponentPair::new(0.5, 0.5)).unwrap();
        assert!((g - wy).abs() <= 1e-12);
        let g = gwyd_skew(&rho, &a, ExponentPair::new(0.3, 0.7)).unwrap();
        assert!((g - wyd_skew(&rho, &a, 0.3).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn gwyd_domain_and_shape_errors() {
        let rho = two_level();
        let a = Observable::pauli_x();
        assert!(matches!(
            gwyd_skew(&rho, &a, ExponentPair::new(0.7, 0.7)),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            gwyd_skew(&rho, &Observable::identity(3), ExponentPair::new(0.2, 0.2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn q_values() {
        let mixed = DensityMatrix::maximally_mixed(3).unwrap();
        assert!(q_uncertainty(&mixed).unwrap().value.abs() < 1e-14);
        let pure = DensityMatrix::new(Observable::from_real_diagonal(&[1.0, 0.0, 0.0, 0.0]).into_matrix()).unwrap();
        assert!((q_uncertainty(&pure).unwrap().value - 3.0).abs() <= 1e-12);
        // 2 − (√(3/4) + √(1/4))² = 1 − √3/2
        let q = q_uncertainty(&two_level()).unwrap();
        assert!((q.value - (1.0 - 3f64.sqrt() / 2.0)).abs() <= 1e-14);
        assert!(q.residual <= 1e-12);
    }

    #[test]
    fn q_alpha_values() {
        let rho = random_density(3, 3, 17).unwrap();
        let q = q_uncertainty(&rho).unwrap().value;
        assert!((q_alpha_uncertainty(&rho, 0.5).unwrap().value - q).abs() <= 1e-10);
        for k in 0..=10 {
            let alpha = k as f64 / 10.0;
            let qa = q_alpha_uncertainty(&rho, alpha).unwrap();
            assert!(qa.value <= q + 1e-10);
            assert!(qa.residual <= 1e-9);
        }
        let mixed = DensityMatrix::maximally_mixed(4).unwrap();
        assert!(q_alpha_uncertainty(&mixed, 0.3).unwrap().value.abs() <= 1e-13);
        assert!(q_alpha_uncertainty(&rho, -0.5).is_err());
    }

    #[test]
    fn q_gwyd_anchor_values() {
        let pure = DensityMatrix::new(Observable::from_real_diagonal(&[1.0, 0.0, 0.0, 0.0]).into_matrix()).unwrap();
        let q = q_gwyd_uncertainty(&pure, ExponentPair::new(0.2, 0.3)).unwrap();
        assert!((q.value - 1.5).abs() <= 1e-12);
        // α + β = 1 picks up 0^0 = 1 and doubles the pure-state value
        let q = q_gwyd_uncertainty(&pure, ExponentPair::new(0.4, 0.6)).unwrap();
        assert!((q.value - 3.0).abs() <= 1e-12);
        let mixed = DensityMatrix::maximally_mixed(4).unwrap();
        assert_eq!(q_gwyd_uncertainty(&mixed, ExponentPair::new(0.2, 0.3)).unwrap().value, 0.0);
        let rho = random_density(3, 3, 21).unwrap();
        let a = q_gwyd_uncertainty(&rho, ExponentPair::new(0.35, 0.65)).unwrap();
        let b = q_alpha_uncertainty(&rho, 0.35).unwrap();
        assert!((a.value - b.value).abs() <= 1e-10);
    }

    #[test]
    fn q_gwyd_unitary_invariance() {
        let rho = random_density(4, 4, 30).unwrap();
        let u = random_unitary(4, 31);
        let ab = ExponentPair::new(0.15, 0.55);
        let a = q_gwyd_uncertainty(&rho, ab).unwrap().value;
        let b = q_gwyd_uncertainty(&rho.conjugate_by(&u).unwrap(), ab).unwrap().value;
        assert!((a - b).abs() <= 1e-10);
    }

    #[test]
    fn remark_quantity_scaling() {
        let rho = random_density(3, 3, 40).unwrap();
        let ab = ExponentPair::new(1.0 / 3.0, 0.25);
        let q = q_gwyd_uncertainty(&rho, ab).unwrap().value;
        let r = remark_quantity(&rho, ab).unwrap();
        assert!((r - 2.0 / (ab.alpha * ab.beta) * q).abs() <= 1e-9);
        assert!(matches!(remark_quantity(&rho, ExponentPair::new(0.0, 0.5)), Err(Error::Domain { .. })));
        assert_eq!(remark_quantity(&DensityMatrix::maximally_mixed(3).unwrap(), ab).unwrap(), 0.0);
    }
}
