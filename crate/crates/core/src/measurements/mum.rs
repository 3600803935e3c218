use super::{
    affine_element, max_feasible_t, max_hermiticity_residual, min_eigenvalue, Worst,
    NORMALIZATION_TOL, PAIR_TRACE_TOL, POSITIVITY_TOL,
};
use crate::bases::{gell_mann_basis, MumPartition};
use crate::error::{Error, Result};
use crate::hermitian::{identity, max_abs, CMatrix, Observable};
use crate::report::ValidationReport;

/// A complete set of `d + 1` MUMs, `povms[b][k] = P_k^{(b)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MumSet {
    dim: usize,
    t: Option<f64>,
    kappa: f64,
    povms: Vec<Vec<Observable>>,
    partition: Option<MumPartition>,
}

impl MumSet {
    /// Assembles a set without certification; see [`verify_mum`].
    pub fn from_parts(
        dim: usize,
        t: Option<f64>,
        kappa: f64,
        povms: Vec<Vec<Observable>>,
        partition: Option<MumPartition>,
    ) -> Self {
        MumSet {
            dim,
            t,
            kappa,
            povms,
            partition,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Construction strength; `None` for projective MUMs lifted from MUBs.
    pub fn t(&self) -> Option<f64> {
        self.t
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn povms(&self) -> &[Vec<Observable>] {
        &self.povms
    }

    pub fn partition(&self) -> Option<&MumPartition> {
        self.partition.as_ref()
    }

    pub fn elements(&self) -> impl Iterator<Item = &Observable> {
        self.povms.iter().flatten()
    }
}

/// `κ(t) = 1/d + t²(1 + √d)²(d − 1)`.
pub fn kappa_for_t(d: usize, t: f64) -> f64 {
    let df = d as f64;
    1.0 / df + t * t * (1.0 + df.sqrt()).powi(2) * (df - 1.0)
}

/// Traceless directions `F_k^{(b)}`: `F^{(b)} − (d + √d) F_{k,b}` for the
/// first `d − 1` and `(√d + 1) F^{(b)}` for the last, with `F^{(b)}` the
/// group sum.
pub fn mum_directions(d: usize, partition: &MumPartition) -> Result<Vec<Vec<Observable>>> {
    crate::hermitian::check_same_dim(d, partition.dim())?;
    let basis = gell_mann_basis(d)?;
    let ops = basis.operators();
    let sd = (d as f64).sqrt();
    Ok(partition
        .groups()
        .iter()
        .map(|group| {
            let sum = group
                .iter()
                .fold(CMatrix::zeros(d, d), |acc, &i| acc + ops[i].matrix());
            let sum = Observable::symmetrized(sum);
            let mut dirs: Vec<Observable> = group
                .iter()
                .map(|&i| {
                    Observable::symmetrized(
                        sum.matrix() - ops[i].scale(d as f64 + sd).matrix(),
                    )
                })
                .collect();
            dirs.push(sum.scale(sd + 1.0));
            dirs
        })
        .collect())
}

/// Builds and certifies `P_k^{(b)} = I/d + t·F_k^{(b)}`.
pub fn build_mums(d: usize, t: f64, partition: &MumPartition) -> Result<MumSet> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::domain("t", format!("t = {t} must be finite and nonnegative")));
    }
    let kappa = kappa_for_t(d, t);
    if kappa <= 1.0 / d as f64 {
        return Err(Error::domain(
            "t",
            format!("t = {t} gives κ = 1/d; κ must exceed 1/d"),
        ));
    }
    let directions = mum_directions(d, partition)?;
    let center = 1.0 / d as f64;
    let mut povms = Vec::with_capacity(d + 1);
    for (b, dirs) in directions.iter().enumerate() {
        let mut povm = Vec::with_capacity(d);
        for (k, f) in dirs.iter().enumerate() {
            let p = affine_element(center, t, f);
            let eigenvalue = min_eigenvalue(&p);
            if eigenvalue < -POSITIVITY_TOL {
                return Err(Error::InfeasibleT {
                    t,
                    index: format!("(b={b}, k={k})"),
                    eigenvalue,
                });
            }
            povm.push(p);
        }
        povms.push(povm);
    }
    let set = MumSet {
        dim: d,
        t: Some(t),
        kappa,
        povms,
        partition: Some(partition.clone()),
    };
    let report = verify_mum(&set);
    if !report.holds {
        return Err(Error::Certification(report.summary()));
    }
    Ok(set)
}

/// Largest `t` keeping every MUM element positive semidefinite.
pub fn max_feasible_t_mum(d: usize, partition: &MumPartition) -> Result<f64> {
    let dirs: Vec<Observable> = mum_directions(d, partition)?.into_iter().flatten().collect();
    Ok(max_feasible_t(1.0 / d as f64, &dirs))
}

/// Residuals of every defining MUM identity.
pub fn verify_mum(m: &MumSet) -> ValidationReport {
    let d = m.dim;
    let df = d as f64;
    let mut report = ValidationReport::new(m.povms.iter().map(Vec::len).sum());

    let shape_ok = m.povms.len() == d + 1 && m.povms.iter().all(|p| p.len() == d);
    report.check(
        "shape",
        if shape_ok { 0.0 } else { 1.0 },
        0.0,
        (!shape_ok).then(|| format!("expected {} POVMs of {d} elements", d + 1)),
    );
    if !shape_ok || m.elements().any(|p| p.dim() != d) {
        return report;
    }

    report.check(
        "hermiticity",
        max_hermiticity_residual(m.elements()),
        crate::hermitian::HERMITICITY_TOL,
        None,
    );

    let mut positivity = Worst::new();
    let mut unit_trace = Worst::new();
    let mut completeness = Worst::new();
    for (b, povm) in m.povms.iter().enumerate() {
        let mut sum = CMatrix::zeros(d, d);
        for (k, p) in povm.iter().enumerate() {
            positivity.offer(-min_eigenvalue(p), || format!("(b={b}, k={k})"));
            unit_trace.offer((p.trace() - 1.0).abs(), || format!("(b={b}, k={k})"));
            sum += p.matrix();
        }
        completeness.offer(max_abs(&(sum - identity(d))), || format!("b={b}"));
    }
    positivity.record(&mut report, "positivity", POSITIVITY_TOL);
    unit_trace.record(&mut report, "unit-trace", NORMALIZATION_TOL);
    completeness.record(&mut report, "completeness", NORMALIZATION_TOL);

    let off = (1.0 - m.kappa) / (df - 1.0);
    let mut cross = Worst::new();
    let mut intra = Worst::new();
    for (b, pb) in m.povms.iter().enumerate() {
        for (c, pc) in m.povms.iter().enumerate().skip(b) {
            for (k, x) in pb.iter().enumerate() {
                for (l, y) in pc.iter().enumerate() {
                    let tr = x.hs_inner(y);
                    let at = || format!("(b={b}, k={k}) vs (b={c}, k={l})");
                    if b != c {
                        cross.offer((tr - 1.0 / df).abs(), at);
                    } else {
                        let target = if k == l { m.kappa } else { off };
                        intra.offer((tr - target).abs(), at);
                    }
                }
            }
        }
    }
    cross.record(&mut report, "cross-povm-trace", PAIR_TRACE_TOL);
    intra.record(&mut report, "intra-povm-trace", PAIR_TRACE_TOL);

    let range = (1.0 / df - m.kappa).max(m.kappa - 1.0).max(0.0);
    report.check(
        "kappa-range",
        range,
        NORMALIZATION_TOL,
        (range > NORMALIZATION_TOL).then(|| format!("κ = {}", m.kappa)),
    );
    if let Some(t) = m.t {
        report.check(
            "kappa-closed-form",
            (m.kappa - kappa_for_t(d, t)).abs(),
            NORMALIZATION_TOL,
            None,
        );
    }
    report
}
