//! Randomized verification suites over all twelve relation families, and the
//! Werner-state complementarity sweep.
//!
//! Every case draws its state and exponents from a seed derived from the
//! master seed and the case index, so results do not depend on scheduling.
//! Cases fan out over rayon and are merged back in input order.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bases::default_partition;
use crate::error::{Error, Result};
use crate::hermitian::{derive_seed, random_density, DensityMatrix};
use crate::measurements::{
    build_general_sic, build_mubs_prime, build_mums, is_prime, max_feasible_t_gsic,
    max_feasible_t_mum, mub_to_projector_mum, sic_qubit, verify_general_sic, verify_mum,
    GeneralSicPovm, MumSet,
};
use crate::relations::{RelationId, RelationKind, RelationReport, ReportParams, Verifier};
use crate::skew::ExponentPair;
use crate::states::werner;

/// Width of the boundary strips excluded when sampling exponents.
pub const BOUNDARY_STRIP: f64 = 1e-3;
/// Smallest exponent drawn for the remark identity.
pub const REMARK_MIN_EXPONENT: f64 = 0.05;

/// The fixed exponent pairs used by the equality suites.
pub const EQUALITY_PAIRS: [ExponentPair; 5] = [
    ExponentPair::new(0.5, 0.5),
    ExponentPair::new(1.0 / 3.0, 0.25),
    ExponentPair::new(5.0 / 12.0, 1.0 / 6.0),
    ExponentPair::new(0.3, 0.7),
    ExponentPair::new(0.05, 0.6),
];

/// Fractions of the maximal feasible `t` used to build MUMs and general SICs.
pub const T_FRACTIONS: [f64; 2] = [0.5, 0.9];

/// Default exponent pairs of the Werner sweep.
pub const WERNER_PAIRS: [ExponentPair; 2] = [
    ExponentPair::new(5.0 / 12.0, 1.0 / 6.0),
    ExponentPair::new(1.0 / 3.0, 0.25),
];

/// Which exponent region a sampler draws from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExponentRegion {
    Equality,
    Inequality,
    /// Equality region with both exponents at least [`REMARK_MIN_EXPONENT`].
    Remark,
}

/// Uniform draw from the region, rejecting boundary strips.
pub fn sample_exponents(region: ExponentRegion, rng: &mut impl Rng) -> ExponentPair {
    let strip = BOUNDARY_STRIP;
    loop {
        let (alpha, beta) = match region {
            ExponentRegion::Equality | ExponentRegion::Remark => {
                let (u, v): (f64, f64) = (rng.random(), rng.random());
                if u + v > 1.0 {
                    (1.0 - u, 1.0 - v)
                } else {
                    (u, v)
                }
            }
            ExponentRegion::Inequality => (0.5 * rng.random::<f64>(), 0.5 * rng.random::<f64>()),
        };
        let floor = if region == ExponentRegion::Remark {
            REMARK_MIN_EXPONENT
        } else {
            strip
        };
        if alpha < floor || beta < floor || alpha + beta > 1.0 - strip {
            continue;
        }
        if region == ExponentRegion::Inequality
            && (alpha + 2.0 * beta > 1.0 - strip || 2.0 * alpha + beta > 1.0 - strip)
        {
            continue;
        }
        return ExponentPair::new(alpha, beta);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random states per dimension for the equality families.
    pub states: usize,
    /// Random `(ρ, α, β)` samples per dimension for the inequality families.
    pub samples: usize,
    /// Samples per dimension for the remark identity.
    pub remark_samples: usize,
    /// Overrides every family's default dimension list.
    pub dims: Option<Vec<usize>>,
    pub verifier: Verifier,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            states: 20,
            samples: 1000,
            remark_samples: 200,
            dims: None,
            verifier: Verifier::default(),
        }
    }
}

impl SuiteConfig {
    fn dims_or(&self, default: &[usize]) -> Vec<usize> {
        self.dims.clone().unwrap_or_else(|| default.to_vec())
    }
}

/// Aggregates for one relation family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySummary {
    pub relation_id: RelationId,
    pub kind: RelationKind,
    pub dims: Vec<usize>,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_slack: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl FamilySummary {
    pub fn holds(&self) -> bool {
        self.failed == 0
    }

    fn from_reports(id: RelationId, dims: Vec<usize>, reports: &[RelationReport], notes: Vec<String>) -> Self {
        let passed = reports.iter().filter(|r| r.holds).count();
        let slacks = reports.iter().filter_map(RelationReport::slack);
        let residuals = reports.iter().filter_map(RelationReport::residual);
        let fold_min = |it: &mut dyn Iterator<Item = f64>| it.reduce(f64::min);
        let fold_max = |it: &mut dyn Iterator<Item = f64>| it.reduce(f64::max);
        FamilySummary {
            relation_id: id,
            kind: id.kind(),
            dims,
            cases: reports.len(),
            passed,
            failed: reports.len() - passed,
            min_slack: fold_min(&mut slacks.into_iter()),
            max_residual: fold_max(&mut residuals.into_iter()),
            notes,
        }
    }
}

/// Certification outcome of one measurement family used by the suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificationSummary {
    pub family: String,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    pub parameter: f64,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub families: Vec<FamilySummary>,
    pub certifications: Vec<CertificationSummary>,
    pub reports: Vec<RelationReport>,
}

impl SuiteReport {
    pub fn holds(&self) -> bool {
        self.families.iter().all(FamilySummary::holds)
            && self.certifications.iter().all(|c| c.holds)
    }

    pub fn family(&self, id: RelationId) -> Option<&FamilySummary> {
        self.families.iter().find(|f| f.relation_id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationReport> {
        self.reports.iter().filter(|r| !r.holds)
    }
}

/// Tags keeping the seed streams of different families apart.
fn family_tag(id: RelationId) -> u64 {
    RelationId::ALL.iter().position(|x| *x == id).unwrap() as u64 + 1
}

fn case_seed(master: u64, id: RelationId, dim: usize, index: usize) -> u64 {
    derive_seed(
        derive_seed(master, family_tag(id) << 32 | dim as u64),
        index as u64,
    )
}

/// State for a case: full rank for equality families, cycling through every
/// rank for inequality families so that boundary spectra are exercised.
fn case_state(seed: u64, dim: usize, rank: usize) -> Result<(DensityMatrix, String)> {
    let rho = random_density(dim, rank, seed)?;
    Ok((rho, format!("ginibre(d={dim}, rank={rank})")))
}

fn run_case(
    id: RelationId,
    dim: usize,
    seed: u64,
    state: &str,
    eval: impl FnOnce() -> Result<RelationReport>,
) -> RelationReport {
    match eval() {
        Ok(r) if !r.params.state.is_empty() => r,
        Ok(r) => r.with_state(Some(seed), state),
        Err(e) => RelationReport::from_error(id, dim, ReportParams::default(), &e)
            .with_state(Some(seed), state),
    }
}

struct Fixtures {
    mums: Vec<(usize, MumSet)>,
    mub_mums: Vec<(usize, MumSet)>,
    gsics: Vec<(usize, GeneralSicPovm)>,
    certifications: Vec<CertificationSummary>,
}

fn build_fixtures(config: &SuiteConfig) -> Result<Fixtures> {
    let mut f = Fixtures {
        mums: Vec::new(),
        mub_mums: Vec::new(),
        gsics: Vec::new(),
        certifications: Vec::new(),
    };
    let mut mum_dims = config.dims_or(&[2, 3, 4, 5]);
    mum_dims.extend(config.dims_or(&[2, 3, 4]));
    mum_dims.sort();
    mum_dims.dedup();
    for d in mum_dims {
        let partition = default_partition(d)?;
        let t_max = max_feasible_t_mum(d, &partition)?;
        for frac in T_FRACTIONS {
            let m = build_mums(d, t_max * frac, &partition)?;
            let r = verify_mum(&m);
            f.certifications.push(CertificationSummary {
                family: "mum".into(),
                dim: d,
                t: m.t(),
                parameter: m.kappa(),
                holds: r.holds,
                detail: r.summary(),
            });
            f.mums.push((d, m));
        }
    }
    let mut mub_dims: Vec<usize> = config.dims_or(&[2, 3, 5]);
    mub_dims.extend(config.dims_or(&[2, 3, 4]));
    mub_dims.retain(|&d| is_prime(d));
    mub_dims.sort();
    mub_dims.dedup();
    for d in mub_dims {
        let m = mub_to_projector_mum(&build_mubs_prime(d)?);
        let r = verify_mum(&m);
        f.certifications.push(CertificationSummary {
            family: "mub".into(),
            dim: d,
            t: None,
            parameter: m.kappa(),
            holds: r.holds,
            detail: r.summary(),
        });
        f.mub_mums.push((d, m));
    }
    for d in config.dims_or(&[2, 3, 4]) {
        if d < 2 {
            continue;
        }
        let t_max = max_feasible_t_gsic(d)?;
        for frac in T_FRACTIONS {
            let g = build_general_sic(d, t_max * frac)?;
            let r = verify_general_sic(&g);
            f.certifications.push(CertificationSummary {
                family: "gsic".into(),
                dim: d,
                t: g.t(),
                parameter: g.a(),
                holds: r.holds,
                detail: r.summary(),
            });
            f.gsics.push((d, g));
        }
    }
    let sic = sic_qubit();
    let r = verify_general_sic(&sic);
    f.certifications.push(CertificationSummary {
        family: "sic".into(),
        dim: 2,
        t: None,
        parameter: sic.a(),
        holds: r.holds,
        detail: r.summary(),
    });
    Ok(f)
}

fn of_dim<T>(items: &[(usize, T)], d: usize) -> impl Iterator<Item = &T> {
    items.iter().filter(move |(k, _)| *k == d).map(|(_, x)| x)
}

/// Runs all twelve relation families.
pub fn verify_all(config: &SuiteConfig) -> Result<SuiteReport> {
    if let Some(dims) = &config.dims {
        if let Some(&bad) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::domain("dimension", format!("d = {bad}, need d >= 2")));
        }
    }
    let fx = build_fixtures(config)?;
    let v = config.verifier;
    let sic = sic_qubit();
    let mut families = Vec::new();
    let mut reports = Vec::new();

    let mut push = |id: RelationId, dims: Vec<usize>, rs: Vec<RelationReport>, notes: Vec<String>| {
        families.push(FamilySummary::from_reports(id, dims, &rs, notes));
        reports.extend(rs);
    };

    // Equality families: `states` full-rank states per dimension.
    let equality = |id: RelationId,
                    dims: &[usize],
                    eval: &(dyn Fn(&DensityMatrix, usize) -> Vec<Result<RelationReport>> + Sync)|
     -> Vec<RelationReport> {
        dims.iter()
            .flat_map(|&d| (0..config.states).map(move |i| (d, i)))
            .collect::<Vec<_>>()
            .par_iter()
            .flat_map_iter(|&(d, i)| {
                let seed = case_seed(config.seed, id, d, i);
                let (rho, desc) = match case_state(seed, d, d) {
                    Ok(x) => x,
                    Err(e) => {
                        return vec![RelationReport::from_error(id, d, ReportParams::default(), &e)
                            .with_state(Some(seed), "invalid")]
                    }
                };
                eval(&rho, d)
                    .into_iter()
                    .map(|r| run_case(id, d, seed, &desc, || r))
                    .collect::<Vec<_>>()
            })
            .collect()
    };

    let thm1_dims = config.dims_or(&[2, 3, 4, 5]);
    let rs = equality(RelationId::Thm1, &thm1_dims, &|rho, d| {
        of_dim(&fx.mums, d)
            .flat_map(|m| EQUALITY_PAIRS.iter().map(move |&ab| v.theorem1(rho, m, ab)))
            .collect()
    });
    push(RelationId::Thm1, thm1_dims, rs, vec![]);

    let cor1_default = config.dims_or(&[2, 3, 5]);
    let cor1_dims: Vec<usize> = cor1_default.iter().copied().filter(|&d| is_prime(d)).collect();
    let skipped: Vec<String> = cor1_default
        .iter()
        .filter(|&&d| !is_prime(d))
        .map(|d| format!("d = {d} skipped: explicit MUBs need prime d"))
        .collect();
    let rs = equality(RelationId::Cor1, &cor1_dims, &|rho, d| {
        of_dim(&fx.mub_mums, d)
            .flat_map(|m| EQUALITY_PAIRS.iter().map(move |&ab| v.corollary1(rho, m, ab)))
            .collect()
    });
    push(RelationId::Cor1, cor1_dims, rs, skipped);

    let cor2_dims = config.dims_or(&[2, 3, 4, 5]);
    let rs = equality(RelationId::Cor2, &cor2_dims, &|rho, d| {
        of_dim(&fx.mums, d)
            .chain(of_dim(&fx.mub_mums, d))
            .map(|m| v.corollary2(rho, m))
            .collect()
    });
    push(RelationId::Cor2, cor2_dims, rs, vec![]);

    let thm3_dims = config.dims_or(&[2, 3, 4]);
    let rs = equality(RelationId::Thm3, &thm3_dims, &|rho, d| {
        let mut out: Vec<Result<RelationReport>> = of_dim(&fx.gsics, d)
            .flat_map(|g| EQUALITY_PAIRS.iter().map(move |&ab| v.theorem3(rho, g, ab)))
            .collect();
        if d == 2 {
            out.extend(EQUALITY_PAIRS.iter().map(|&ab| v.theorem3(rho, &sic, ab)));
        }
        out
    });
    push(RelationId::Thm3, thm3_dims, rs, vec![]);

    let cor4_requested = config.dims_or(&[2]);
    let cor4_dims: Vec<usize> = cor4_requested.iter().copied().filter(|&d| d == 2).collect();
    let skipped: Vec<String> = cor4_requested
        .iter()
        .filter(|&&d| d != 2)
        .map(|d| format!("d = {d} skipped: rank-one SIC-POVM implemented for d = 2 only"))
        .collect();
    let rs = equality(RelationId::Cor4, &cor4_dims, &|rho, _| {
        EQUALITY_PAIRS.iter().map(|&ab| v.corollary4(rho, &sic, ab)).collect()
    });
    push(RelationId::Cor4, cor4_dims, rs, skipped);

    let cor5_dims = config.dims_or(&[2, 3, 4]);
    let rs = equality(RelationId::Cor5, &cor5_dims, &|rho, d| {
        let mut out: Vec<Result<RelationReport>> =
            of_dim(&fx.gsics, d).map(|g| v.corollary5(rho, g)).collect();
        if d == 2 {
            out.push(v.corollary5(rho, &sic));
        }
        out
    });
    push(RelationId::Cor5, cor5_dims, rs, vec![]);

    // Inequality families and the remark identity: random (ρ, α, β) samples.
    let sampled = |id: RelationId,
                   dims: &[usize],
                   count: usize,
                   region: ExponentRegion,
                   eval: &(dyn Fn(&DensityMatrix, usize, ExponentPair, usize) -> Result<RelationReport> + Sync)|
     -> Vec<RelationReport> {
        dims.iter()
            .flat_map(|&d| (0..count).map(move |i| (d, i)))
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&(d, i)| {
                let seed = case_seed(config.seed, id, d, i);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let ab = sample_exponents(region, &mut rng);
                let rank = 1 + i % d;
                let state_seed = rng.random::<u64>();
                run_case(id, d, seed, format!("ginibre(d={d}, rank={rank})").as_str(), || {
                    let (rho, desc) = case_state(state_seed, d, rank)?;
                    Ok(eval(&rho, d, ab, i)?.with_state(Some(seed), desc))
                })
            })
            .collect()
    };

    let ineq_dims = config.dims_or(&[2, 3, 4]);
    let rs = sampled(RelationId::Lemma1, &ineq_dims, config.samples, ExponentRegion::Inequality, &|rho, _, ab, _| {
        v.lemma1(rho, ab)
    });
    push(RelationId::Lemma1, ineq_dims.clone(), rs, vec![]);

    let rs = sampled(RelationId::Thm2, &ineq_dims, config.samples, ExponentRegion::Inequality, &|rho, d, ab, i| {
        let ms: Vec<&MumSet> = of_dim(&fx.mums, d).collect();
        v.theorem2(rho, ms[i % ms.len()], ab)
    });
    push(RelationId::Thm2, ineq_dims.clone(), rs, vec![]);

    let rs = sampled(RelationId::Thm4, &ineq_dims, config.samples, ExponentRegion::Inequality, &|rho, d, ab, i| {
        let gs: Vec<&GeneralSicPovm> = of_dim(&fx.gsics, d).collect();
        v.theorem4(rho, gs[i % gs.len()], ab)
    });
    push(RelationId::Thm4, ineq_dims.clone(), rs, vec![]);

    let mut notes = Vec::new();
    for &d in &ineq_dims {
        if !is_prime(d) {
            notes.push(format!("d = {d}: left side from the κ = 1 closed form (no explicit MUBs)"));
        }
    }
    let rs = sampled(RelationId::Cor3, &ineq_dims, config.samples, ExponentRegion::Inequality, &|rho, d, ab, _| {
        match of_dim(&fx.mub_mums, d).next() {
            Some(m) => v.corollary3(rho, m, ab),
            None => v.corollary3_closed_form(rho, ab),
        }
    });
    push(RelationId::Cor3, ineq_dims.clone(), rs, notes);

    let notes: Vec<String> = ineq_dims
        .iter()
        .filter(|&&d| d != 2)
        .map(|d| format!("d = {d}: left side from the a = 1/d² closed form (no explicit SIC-POVM)"))
        .collect();
    let rs = sampled(RelationId::Cor6, &ineq_dims, config.samples, ExponentRegion::Inequality, &|rho, d, ab, _| {
        if d == 2 {
            v.corollary6(rho, &sic, ab)
        } else {
            v.corollary6_closed_form(rho, ab)
        }
    });
    push(RelationId::Cor6, ineq_dims.clone(), rs, notes);

    let remark_dims = config.dims_or(&[2, 3, 4]);
    let rs = sampled(
        RelationId::RemarkIdentity,
        &remark_dims,
        config.remark_samples,
        ExponentRegion::Remark,
        &|rho, _, ab, _| v.remark_identity(rho, ab),
    );
    push(RelationId::RemarkIdentity, remark_dims, rs, vec![]);

    families.sort_by_key(|f| family_tag(f.relation_id));
    Ok(SuiteReport {
        seed: config.seed,
        families,
        certifications: fx.certifications,
        reports,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepFamily {
    Mub,
    Sic,
}

impl SweepFamily {
    pub fn name(&self) -> &'static str {
        match self {
            SweepFamily::Mub => "mub",
            SweepFamily::Sic => "sic",
        }
    }
}

impl std::str::FromStr for SweepFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mub" => Ok(SweepFamily::Mub),
            "sic" => Ok(SweepFamily::Sic),
            other => Err(Error::domain("family", format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: f64,
    pub alpha: f64,
    pub beta: f64,
    pub family: SweepFamily,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

/// `p = 0, 0.01, …, 1`.
pub fn default_p_grid() -> Vec<f64> {
    (0..=100).map(|i| i as f64 / 100.0).collect()
}

/// Werner-state complementarity curves in `d = 4`: for the MUB family
/// `Q^{α,β}/(d+1)` against `(d − Tr ρ^α Tr ρ^{1−α})/(2(d+1))`, for the SIC
/// family the same with `d(d+1)` in place of `d + 1`. Rows are ordered by
/// exponent pair, then by `p`.
pub fn werner_sweep(p_grid: &[f64], pairs: &[ExponentPair], family: SweepFamily) -> Result<Vec<SweepRow>> {
    for ab in pairs {
        ab.require_inequality_region()?;
    }
    let states = p_grid
        .par_iter()
        .map(|&p| werner(p))
        .collect::<Result<Vec<_>>>()?;
    let v = Verifier::default();
    let cases: Vec<(ExponentPair, usize)> = pairs
        .iter()
        .flat_map(|&ab| (0..p_grid.len()).map(move |i| (ab, i)))
        .collect();
    cases
        .par_iter()
        .map(|&(ab, i)| {
            let rho = &states[i];
            let r = match family {
                SweepFamily::Mub => v.corollary3_closed_form(rho, ab)?,
                SweepFamily::Sic => v.corollary6_closed_form(rho, ab)?,
            };
            Ok(SweepRow {
                p: p_grid[i],
                alpha: ab.alpha,
                beta: ab.beta,
                family,
                lhs: r.lhs,
                rhs: r.rhs,
                slack: r.rhs - r.lhs,
            })
        })
        .collect()
}

/// Shortest decimal that parses back to the same bits; exponent notation for
/// magnitudes below `1e-5`.
pub fn format_f64(x: f64) -> String {
    if x != 0.0 && x.abs() < 1e-5 {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

/// CSV with header `p,alpha,beta,family,lhs,rhs,slack`, round-trip exact
/// numbers (see [`format_f64`]), LF line endings.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("p,alpha,beta,family,lhs,rhs,slack\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            format_f64(r.p),
            format_f64(r.alpha),
            format_f64(r.beta),
            r.family.name(),
            format_f64(r.lhs),
            format_f64(r.rhs),
            format_f64(r.slack)
        );
    }
    out
}
