//! Both sides of every uncertainty and complementarity relation, evaluated
//! numerically and packaged as [`RelationReport`]s.
//!
//! Equalities hold when `|lhs − rhs| ≤ tol · max(1, |rhs|)`; inequalities
//! (`lhs ≤ rhs`) hold when `lhs ≤ rhs + tol`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{check_same_dim, DensityMatrix};
use crate::measurements::{GeneralSicPovm, MumSet};
use crate::skew::{
    complementarity_bound, q_gwyd_spectral, q_gwyd_uncertainty, remark_quantity, ExponentPair,
    SkewEvaluator,
};

pub const EQUALITY_TOL: f64 = 1e-9;
pub const INEQUALITY_TOL: f64 = 1e-10;
/// How close `κ` (or `d²·a`) must be to one for the projective corollaries.
pub const UNIT_PARAMETER_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationId {
    Lemma1,
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    Cor1,
    Cor2,
    Cor3,
    Cor4,
    Cor5,
    Cor6,
    RemarkIdentity,
}

impl RelationId {
    pub const ALL: [RelationId; 12] = [
        RelationId::Lemma1,
        RelationId::Thm1,
        RelationId::Thm2,
        RelationId::Thm3,
        RelationId::Thm4,
        RelationId::Cor1,
        RelationId::Cor2,
        RelationId::Cor3,
        RelationId::Cor4,
        RelationId::Cor5,
        RelationId::Cor6,
        RelationId::RemarkIdentity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RelationId::Lemma1 => "lemma1",
            RelationId::Thm1 => "thm1",
            RelationId::Thm2 => "thm2",
            RelationId::Thm3 => "thm3",
            RelationId::Thm4 => "thm4",
            RelationId::Cor1 => "cor1",
            RelationId::Cor2 => "cor2",
            RelationId::Cor3 => "cor3",
            RelationId::Cor4 => "cor4",
            RelationId::Cor5 => "cor5",
            RelationId::Cor6 => "cor6",
            RelationId::RemarkIdentity => "remark-identity",
        }
    }

    pub fn kind(&self) -> RelationKind {
        match self {
            RelationId::Lemma1
            | RelationId::Thm2
            | RelationId::Thm4
            | RelationId::Cor3
            | RelationId::Cor6 => RelationKind::Inequality,
            _ => RelationKind::Equality,
        }
    }
}

impl std::fmt::Display for RelationId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    Equality,
    Inequality,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    pub alpha: f64,
    pub beta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub state: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub relation_id: RelationId,
    pub kind: RelationKind,
    pub dim: usize,
    pub params: ReportParams,
    pub lhs: f64,
    pub rhs: f64,
    /// `|lhs − rhs|` for equalities, `rhs − lhs` for inequalities.
    pub residual_or_slack: f64,
    pub tolerance: f64,
    pub holds: bool,
    /// Extra diagnostic value (the β-version of the complementarity bound).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Flags evaluations that depend on a convention rather than the formula alone.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl RelationReport {
    fn new(
        relation_id: RelationId,
        dim: usize,
        params: ReportParams,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
    ) -> Self {
        let kind = relation_id.kind();
        let (residual_or_slack, holds) = match kind {
            RelationKind::Equality => {
                let r = (lhs - rhs).abs();
                (r, r <= tolerance * rhs.abs().max(1.0))
            }
            RelationKind::Inequality => (rhs - lhs, lhs <= rhs + tolerance),
        };
        RelationReport {
            relation_id,
            kind,
            dim,
            params,
            lhs,
            rhs,
            residual_or_slack,
            tolerance,
            holds,
            diagnostic: None,
            error: None,
            note: None,
        }
    }

    /// A failed report standing in for an evaluation error.
    pub fn from_error(relation_id: RelationId, dim: usize, params: ReportParams, err: &Error) -> Self {
        let mut r = RelationReport::new(relation_id, dim, params, f64::NAN, f64::NAN, f64::NAN);
        r.holds = false;
        r.error = Some(err.to_string());
        r
    }

    pub fn with_state(mut self, seed: Option<u64>, state: impl Into<String>) -> Self {
        self.params.seed = seed;
        self.params.state = state.into();
        self
    }

    pub fn slack(&self) -> Option<f64> {
        (self.kind == RelationKind::Inequality).then_some(self.residual_or_slack)
    }

    pub fn residual(&self) -> Option<f64> {
        (self.kind == RelationKind::Equality).then_some(self.residual_or_slack)
    }
}

/// `C^{α,β}(ρ, P_MUM) = (1/(d+1)) Σ_b Σ_k I^{α,β}_ρ(P_k^{(b)})`.
pub fn coherence_mum(rho: &DensityMatrix, m: &MumSet, ab: ExponentPair) -> Result<f64> {
    check_same_dim(rho.dim(), m.dim())?;
    let ev = SkewEvaluator::new(rho, ab)?;
    let total = m
        .elements()
        .map(|p| ev.skew(p))
        .sum::<Result<f64>>()?;
    Ok(total / (m.dim() + 1) as f64)
}

/// `C^{α,β}(ρ, P_GSM) = Σ_i I^{α,β}_ρ(P_i)`.
pub fn coherence_gsic(rho: &DensityMatrix, g: &GeneralSicPovm, ab: ExponentPair) -> Result<f64> {
    check_same_dim(rho.dim(), g.dim())?;
    let ev = SkewEvaluator::new(rho, ab)?;
    g.elements().iter().map(|p| ev.skew(p)).sum()
}

fn mum_factor(m: &MumSet) -> f64 {
    let d = m.dim() as f64;
    (m.kappa() * d - 1.0) / (d * d - 1.0)
}

fn gsic_factor(g: &GeneralSicPovm) -> f64 {
    let d = g.dim() as f64;
    (g.a() * d.powi(3) - 1.0) / (d * (d * d - 1.0))
}

fn require_unit_kappa(m: &MumSet) -> Result<()> {
    if (m.kappa() - 1.0).abs() > UNIT_PARAMETER_TOL {
        return Err(Error::domain(
            "kappa",
            format!("κ = {} but the MUB corollaries need κ = 1", m.kappa()),
        ));
    }
    Ok(())
}

fn require_rank_one_sic(g: &GeneralSicPovm) -> Result<()> {
    let d = g.dim() as f64;
    if (g.a() * d * d - 1.0).abs() > UNIT_PARAMETER_TOL {
        return Err(Error::domain(
            "a",
            format!("a = {} but the SIC corollaries need a = 1/d²", g.a()),
        ));
    }
    Ok(())
}

fn half_half() -> ExponentPair {
    ExponentPair::new(0.5, 0.5)
}

/// Evaluates relations at fixed tolerances.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verifier {
    pub equality_tol: f64,
    pub inequality_tol: f64,
}

impl Default for Verifier {
    fn default() -> Self {
        Verifier {
            equality_tol: EQUALITY_TOL,
            inequality_tol: INEQUALITY_TOL,
        }
    }
}

impl Verifier {
    /// Both tolerances set to one value.
    pub fn uniform(tol: f64) -> Self {
        Verifier {
            equality_tol: tol,
            inequality_tol: tol,
        }
    }

    fn report(&self, id: RelationId, dim: usize, params: ReportParams, lhs: f64, rhs: f64) -> RelationReport {
        let tol = match id.kind() {
            RelationKind::Equality => self.equality_tol,
            RelationKind::Inequality => self.inequality_tol,
        };
        RelationReport::new(id, dim, params, lhs, rhs, tol)
    }

    fn mum_params(ab: ExponentPair, m: &MumSet) -> ReportParams {
        ReportParams {
            alpha: ab.alpha,
            beta: ab.beta,
            kappa: Some(m.kappa()),
            t: m.t(),
            ..Default::default()
        }
    }

    fn gsic_params(ab: ExponentPair, g: &GeneralSicPovm) -> ReportParams {
        ReportParams {
            alpha: ab.alpha,
            beta: ab.beta,
            a: Some(g.a()),
            t: g.t(),
            ..Default::default()
        }
    }

    fn plain_params(ab: ExponentPair) -> ReportParams {
        ReportParams {
            alpha: ab.alpha,
            beta: ab.beta,
            ..Default::default()
        }
    }

    /// `Q^{α,β}(ρ) ≤ ½(d − Tr ρ^α Tr ρ^{1−α})`.
    pub fn lemma1(&self, rho: &DensityMatrix, ab: ExponentPair) -> Result<RelationReport> {
        ab.require_inequality_region()?;
        let lhs = q_gwyd_uncertainty(rho, ab)?.value;
        let rhs = complementarity_bound(rho, ab.alpha)?;
        let mut r = self.report(RelationId::Lemma1, rho.dim(), Self::plain_params(ab), lhs, rhs);
        r.diagnostic = Some(complementarity_bound(rho, ab.beta)?);
        Ok(r)
    }

    /// `C^{α,β}(ρ, P_MUM) = (κd − 1)/(d² − 1) · Q^{α,β}(ρ)`.
    pub fn theorem1(&self, rho: &DensityMatrix, m: &MumSet, ab: ExponentPair) -> Result<RelationReport> {
        let lhs = coherence_mum(rho, m, ab)?;
        let rhs = mum_factor(m) * q_gwyd_uncertainty(rho, ab)?.value;
        Ok(self.report(RelationId::Thm1, rho.dim(), Self::mum_params(ab, m), lhs, rhs))
    }

    /// `C^{α,β}(ρ, P_MUM) ≤ (κd − 1)/(2(d² − 1)) · (d − Tr ρ^α Tr ρ^{1−α})`.
    pub fn theorem2(&self, rho: &DensityMatrix, m: &MumSet, ab: ExponentPair) -> Result<RelationReport> {
        ab.require_inequality_region()?;
        let lhs = coherence_mum(rho, m, ab)?;
        let rhs = mum_factor(m) * complementarity_bound(rho, ab.alpha)?;
        Ok(self.report(RelationId::Thm2, rho.dim(), Self::mum_params(ab, m), lhs, rhs))
    }

    /// `C^{α,β}(ρ, P_GSM) = (ad³ − 1)/(d(d² − 1)) · Q^{α,β}(ρ)`.
    pub fn theorem3(&self, rho: &DensityMatrix, g: &GeneralSicPovm, ab: ExponentPair) -> Result<RelationReport> {
        let lhs = coherence_gsic(rho, g, ab)?;
        let rhs = gsic_factor(g) * q_gwyd_uncertainty(rho, ab)?.value;
        Ok(self.report(RelationId::Thm3, rho.dim(), Self::gsic_params(ab, g), lhs, rhs))
    }

    /// `C^{α,β}(ρ, P_GSM) ≤ (ad³ − 1)/(2d(d² − 1)) · (d − Tr ρ^α Tr ρ^{1−α})`.
    pub fn theorem4(&self, rho: &DensityMatrix, g: &GeneralSicPovm, ab: ExponentPair) -> Result<RelationReport> {
        ab.require_inequality_region()?;
        let lhs = coherence_gsic(rho, g, ab)?;
        let rhs = gsic_factor(g) * complementarity_bound(rho, ab.alpha)?;
        Ok(self.report(RelationId::Thm4, rho.dim(), Self::gsic_params(ab, g), lhs, rhs))
    }

    /// Projective MUMs (`κ = 1`): `C^{α,β} = Q^{α,β}/(d + 1)`.
    pub fn corollary1(&self, rho: &DensityMatrix, m: &MumSet, ab: ExponentPair) -> Result<RelationReport> {
        require_unit_kappa(m)?;
        let lhs = coherence_mum(rho, m, ab)?;
        let rhs = q_gwyd_uncertainty(rho, ab)?.value / (rho.dim() + 1) as f64;
        Ok(self.report(RelationId::Cor1, rho.dim(), Self::mum_params(ab, m), lhs, rhs))
    }

    /// `C(ρ, P_MUM) = (κd − 1)/(d² − 1) · (d − (Tr √ρ)²)`.
    pub fn corollary2(&self, rho: &DensityMatrix, m: &MumSet) -> Result<RelationReport> {
        let ab = half_half();
        let lhs = coherence_mum(rho, m, ab)?;
        let d = rho.dim() as f64;
        let rhs = mum_factor(m) * (d - rho.trace_power(0.5).powi(2));
        Ok(self.report(RelationId::Cor2, rho.dim(), Self::mum_params(ab, m), lhs, rhs))
    }

    /// Projective MUMs: `C^{α,β} ≤ (d − Tr ρ^α Tr ρ^{1−α})/(2(d + 1))`.
    pub fn corollary3(&self, rho: &DensityMatrix, m: &MumSet, ab: ExponentPair) -> Result<RelationReport> {
        ab.require_inequality_region()?;
        require_unit_kappa(m)?;
        let lhs = coherence_mum(rho, m, ab)?;
        let rhs = complementarity_bound(rho, ab.alpha)? / (rho.dim() + 1) as f64;
        Ok(self.report(RelationId::Cor3, rho.dim(), Self::mum_params(ab, m), lhs, rhs))
    }

    /// Corollary 3 with the left side taken from the `κ = 1` uncertainty
    /// identity, `Q^{α,β}/(d + 1)`, for dimensions without explicit MUBs.
    pub fn corollary3_closed_form(&self, rho: &DensityMatrix, ab: ExponentPair) -> Result<RelationReport> {
        ab.require_inequality_region()?;
        let n = (rho.dim() + 1) as f64;
        let lhs = q_gwyd_spectral(rho, ab)? / n;
        let rhs = complementarity_bound(rho, ab.alpha)? / n;
        let mut params = Self::plain_params(ab);
        params.kappa = Some(1.0);
        Ok(self.report(RelationId::Cor3, rho.dim(), params, lhs, rhs))
    }

    /// Rank-one SIC (`a = 1/d²`): `C^{α,β} = Q^{α,β}/(d(d + 1))`.
    pub fn corollary4(&self, rho: &DensityMatrix, g: &GeneralSicPovm, ab: ExponentPair) -> Result<RelationReport> {
        require_rank_one_sic(g)?;
        let d = rho.dim() as f64;
        let lhs = coherence_gsic(rho, g, ab)?;
        let rhs = q_gwyd_uncertainty(rho, ab)?.value / (d * (d + 1.0));
        Ok(self.report(RelationId::Cor4, rho.dim(), Self::gsic_params(ab, g), lhs, rhs))
    }

    /// `C(ρ, P_GSM) = (ad³ − 1)(d − (Tr √ρ)²)/(d(d² − 1))`.
    pub fn corollary5(&self, rho: &DensityMatrix, g: &GeneralSicPovm) -> Result<RelationReport> {
        let ab = half_half();
        let lhs = coherence_gsic(rho, g, ab)?;
        let d = rho.dim() as f64;
        let rhs = gsic_factor(g) * (d - rho.trace_power(0.5).powi(2));
        Ok(self.report(RelationId::Cor5, rho.dim(), Self::gsic_params(ab, g), lhs, rhs))
    }

    /// Rank-one SIC: `C^{α,β} ≤ (d − Tr ρ^α Tr ρ^{1−α})/(2d(d + 1))`.
    pub fn corollary6(&self, rho: &DensityMatrix, g: &GeneralSicPovm, ab: ExponentPair) -> Result<RelationReport> {
        ab.require_inequality_region()?;
        require_rank_one_sic(g)?;
        let d = rho.dim() as f64;
        let lhs = coherence_gsic(rho, g, ab)?;
        let rhs = complementarity_bound(rho, ab.alpha)? / (d * (d + 1.0));
        Ok(self.report(RelationId::Cor6, rho.dim(), Self::gsic_params(ab, g), lhs, rhs))
    }

    /// Corollary 6 with the left side from the `a = 1/d²` identity,
    /// `Q^{α,β}/(d(d + 1))`.
    pub fn corollary6_closed_form(&self, rho: &DensityMatrix, ab: ExponentPair) -> Result<RelationReport> {
        ab.require_inequality_region()?;
        let d = rho.dim() as f64;
        let n = d * (d + 1.0);
        let lhs = q_gwyd_spectral(rho, ab)? / n;
        let rhs = complementarity_bound(rho, ab.alpha)? / n;
        let mut params = Self::plain_params(ab);
        params.a = Some(1.0 / (d * d));
        Ok(self.report(RelationId::Cor6, rho.dim(), params, lhs, rhs))
    }

    /// Full-square spectral sum against `(2/(αβ)) · Q^{α,β}(ρ)`.
    pub fn remark_identity(&self, rho: &DensityMatrix, ab: ExponentPair) -> Result<RelationReport> {
        let lhs = remark_quantity(rho, ab)?;
        let rhs = 2.0 / (ab.alpha * ab.beta) * q_gwyd_uncertainty(rho, ab)?.value;
        let mut report = self.report(RelationId::RemarkIdentity, rho.dim(), Self::plain_params(ab), lhs, rhs);
        if ab.on_unit_boundary() && !rho.is_full_rank() {
            report.note = Some("α + β = 1 on a rank-deficient state: evaluated with 0^0 = 1".into());
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::default_partition;
    use crate::hermitian::{random_density, Observable};
    use crate::measurements::{
        build_general_sic, build_mubs_prime, build_mums, max_feasible_t_gsic, max_feasible_t_mum,
        mub_to_projector_mum, sic_qubit,
    };
    use crate::skew::{q_uncertainty, wy_skew};

    #[test]
    fn remark_boundary_on_singular_state_is_flagged() {
        let v = Verifier::default();
        let flagged = v.remark_identity(&pure(3), ExponentPair::new(0.4, 0.6)).unwrap();
        assert!(flagged.holds && flagged.note.is_some());
        let interior = v.remark_identity(&pure(3), ExponentPair::new(0.4, 0.3)).unwrap();
        assert!(interior.note.is_none());
        let full = v.remark_identity(&random_density(3, 3, 5).unwrap(), ExponentPair::new(0.4, 0.6)).unwrap();
        assert!(full.note.is_none());
    }

    fn pure(d: usize) -> DensityMatrix {
        let mut diag = vec![0.0; d];
        diag[0] = 1.0;
        DensityMatrix::new(Observable::from_real_diagonal(&diag).into_matrix()).unwrap()
    }

    fn mum(d: usize, frac: f64) -> MumSet {
        let p = default_partition(d).unwrap();
        build_mums(d, max_feasible_t_mum(d, &p).unwrap() * frac, &p).unwrap()
    }

    #[test]
    fn coherence_vanishes_on_maximally_mixed() {
        let rho = DensityMatrix::maximally_mixed(3).unwrap();
        let ab = ExponentPair::new(0.3, 0.4);
        assert!(coherence_mum(&rho, &mum(3, 0.5), ab).unwrap() <= 1e-15);
        let g = build_general_sic(3, max_feasible_t_gsic(3).unwrap() * 0.5).unwrap();
        assert!(coherence_gsic(&rho, &g, ab).unwrap() <= 1e-15);
    }

    #[test]
    fn coherence_at_half_half_is_wy_average() {
        let rho = random_density(3, 3, 5).unwrap();
        let m = mum(3, 0.6);
        let wy: f64 = m.elements().map(|p| wy_skew(&rho, p).unwrap()).sum::<f64>() / 4.0;
        assert!((coherence_mum(&rho, &m, half_half()).unwrap() - wy).abs() <= 1e-12);
        let g = sic_qubit();
        let rho2 = random_density(2, 2, 6).unwrap();
        let wy: f64 = g.elements().iter().map(|p| wy_skew(&rho2, p).unwrap()).sum();
        assert!((coherence_gsic(&rho2, &g, half_half()).unwrap() - wy).abs() <= 1e-12);
    }

    #[test]
    fn theorem1_on_seeded_state() {
        let rho = random_density(3, 3, 5).unwrap();
        for ab in [ExponentPair::new(0.2, 0.3), ExponentPair::new(0.5, 0.5), ExponentPair::new(0.0, 0.4)] {
            let r = Verifier::default().theorem1(&rho, &mum(3, 0.8), ab).unwrap();
            assert!(r.holds, "{r:?}");
        }
    }

    #[test]
    fn corollary1_and_3_with_mubs() {
        let rho = random_density(3, 3, 9).unwrap();
        let m = mub_to_projector_mum(&build_mubs_prime(3).unwrap());
        let v = Verifier::default();
        assert!(v.corollary1(&rho, &m, ExponentPair::new(0.4, 0.35)).unwrap().holds);
        assert!(v.corollary3(&rho, &m, ExponentPair::new(0.25, 0.3)).unwrap().holds);
        // corollaries 1/3 refuse κ < 1
        assert!(v.corollary1(&rho, &mum(3, 0.5), ExponentPair::new(0.4, 0.35)).is_err());
    }

    #[test]
    fn corollary2_closed_form() {
        let rho = random_density(4, 4, 12).unwrap();
        let m = mum(4, 0.7);
        let r = Verifier::default().corollary2(&rho, &m).unwrap();
        assert!(r.holds);
        let q = q_uncertainty(&rho).unwrap().value;
        let d = 4.0;
        assert!((r.rhs - (m.kappa() * d - 1.0) / (d * d - 1.0) * q).abs() <= 1e-12);
    }

    #[test]
    fn theorem2_pure_state_is_tight() {
        let rho = pure(3);
        let ab = ExponentPair::new(0.2, 0.3);
        let r = Verifier::default().theorem2(&rho, &mum(3, 0.9), ab).unwrap();
        assert!(r.holds);
        assert!(r.residual_or_slack >= -1e-10);
        assert!(r.residual_or_slack.abs() <= 1e-10);
    }

    #[test]
    fn theorem2_requires_inequality_region() {
        let rho = pure(3);
        assert!(matches!(
            Verifier::default().theorem2(&rho, &mum(3, 0.9), ExponentPair::new(0.5, 0.5)),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn maximally_mixed_inequalities_are_zero() {
        let rho = DensityMatrix::maximally_mixed(3).unwrap();
        let ab = ExponentPair::new(0.2, 0.3);
        let v = Verifier::default();
        let r = v.theorem2(&rho, &mum(3, 0.9), ab).unwrap();
        assert!(r.lhs <= 1e-15);
        assert!(r.rhs.abs() <= 1e-14);
        let g = build_general_sic(3, max_feasible_t_gsic(3).unwrap() * 0.5).unwrap();
        let r = v.theorem4(&rho, &g, ab).unwrap();
        assert!(r.holds && r.lhs <= 1e-15);
        let r = v.lemma1(&rho, ab).unwrap();
        assert!(r.holds && r.lhs == 0.0);
    }

    #[test]
    fn theorem3_and_sic_corollaries() {
        let v = Verifier::default();
        let rho = random_density(2, 2, 3).unwrap();
        let ab = ExponentPair::new(1.0 / 3.0, 0.25);
        let g = sic_qubit();
        assert!(v.theorem3(&rho, &g, ab).unwrap().holds);
        let r = v.corollary4(&rho, &g, ab).unwrap();
        assert!(r.holds);
        assert!((r.rhs - q_gwyd_uncertainty(&rho, ab).unwrap().value / 6.0).abs() <= 1e-15);
        assert!(v.corollary5(&rho, &g).unwrap().holds);
        assert!(v.corollary6(&rho, &g, ab).unwrap().holds);
        let g3 = build_general_sic(3, max_feasible_t_gsic(3).unwrap() * 0.4).unwrap();
        let rho3 = random_density(3, 3, 4).unwrap();
        assert!(v.theorem3(&rho3, &g3, ab).unwrap().holds);
        assert!(v.corollary4(&rho3, &g3, ab).is_err());
    }

    #[test]
    fn lemma1_pure_state_equality() {
        let r = Verifier::default().lemma1(&pure(4), ExponentPair::new(0.25, 0.25)).unwrap();
        assert!((r.lhs - 1.5).abs() <= 1e-12);
        assert!((r.rhs - 1.5).abs() <= 1e-12);
        assert!(r.holds);
    }

    #[test]
    fn remark_identity_values() {
        let v = Verifier::default();
        let rho = random_density(3, 3, 14).unwrap();
        assert!(v.remark_identity(&rho, ExponentPair::new(1.0 / 3.0, 0.25)).unwrap().holds);
        let r = v.remark_identity(&rho, half_half()).unwrap();
        let q = q_gwyd_uncertainty(&rho, half_half()).unwrap().value;
        assert!((r.rhs - 8.0 * q).abs() <= 1e-15);
        let mixed = DensityMatrix::maximally_mixed(3).unwrap();
        let r = v.remark_identity(&mixed, half_half()).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
    }

    #[test]
    fn closed_form_corollaries() {
        let v = Verifier::default();
        let rho = pure(4);
        let ab = ExponentPair::new(0.2, 0.2);
        let r = v.corollary3_closed_form(&rho, ab).unwrap();
        assert!((r.lhs - 0.3).abs() <= 1e-12 && (r.rhs - 0.3).abs() <= 1e-12);
        let r = v.corollary6_closed_form(&rho, ab).unwrap();
        assert!((r.lhs - 0.075).abs() <= 1e-12 && r.holds);
    }

    #[test]
    fn tight_tolerance_fails_equalities() {
        let rho = random_density(4, 4, 1).unwrap();
        let v = Verifier::uniform(0.0);
        let fails = (0..10)
            .filter(|i| {
                let ab = ExponentPair::new(0.05 * *i as f64, 0.3);
                !v.theorem1(&rho, &mum(4, 0.7), ab).unwrap().holds
            })
            .count();
        assert!(fails > 0);
    }

    #[test]
    fn report_json_shape() {
        let r = Verifier::default().lemma1(&pure(2), ExponentPair::new(0.2, 0.2)).unwrap();
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["relation_id"], "lemma1");
        assert_eq!(j["kind"], "inequality");
        assert!(j["params"]["alpha"].is_number());
    }
}
