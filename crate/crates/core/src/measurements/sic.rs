use num_complex::Complex64;

use super::{
    affine_element, max_feasible_t, max_hermiticity_residual, min_eigenvalue, Worst,
    NORMALIZATION_TOL, PAIR_TRACE_TOL, POSITIVITY_TOL,
};
use crate::bases::gell_mann_basis;
use crate::error::{Error, Result};
use crate::hermitian::{identity, max_abs, CMatrix, Observable};
use crate::report::ValidationReport;

/// A general SIC-POVM: `d²` elements with `Tr P_i² = a`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralSicPovm {
    dim: usize,
    t: Option<f64>,
    a: f64,
    elements: Vec<Observable>,
}

impl GeneralSicPovm {
    /// Assembles a POVM without certification; see [`verify_general_sic`].
    pub fn from_parts(dim: usize, t: Option<f64>, a: f64, elements: Vec<Observable>) -> Self {
        GeneralSicPovm { dim, t, a, elements }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Construction strength; `None` for the rank-one qubit SIC.
    pub fn t(&self) -> Option<f64> {
        self.t
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn elements(&self) -> &[Observable] {
        &self.elements
    }
}

/// `a(t) = 1/d³ + t²(d − 1)(d + 1)³`.
pub fn a_for_t(d: usize, t: f64) -> f64 {
    let df = d as f64;
    1.0 / df.powi(3) + t * t * (df - 1.0) * (df + 1.0).powi(3)
}

/// Traceless directions: `F − d(d+1)F_i` for `i < d²` and `(d+1)F` last,
/// with `F` the sum of all Gell-Mann operators.
pub fn gsic_directions(d: usize) -> Result<Vec<Observable>> {
    let basis = gell_mann_basis(d)?;
    let ops = basis.operators();
    let sum = Observable::symmetrized(
        ops.iter()
            .fold(CMatrix::zeros(d, d), |acc, f| acc + f.matrix()),
    );
    let c = (d * (d + 1)) as f64;
    let mut dirs: Vec<Observable> = ops
        .iter()
        .map(|f| Observable::symmetrized(sum.matrix() - f.scale(c).matrix()))
        .collect();
    dirs.push(sum.scale((d + 1) as f64));
    Ok(dirs)
}

/// Builds and certifies `P_i = I/d² + t·G_i`.
pub fn build_general_sic(d: usize, t: f64) -> Result<GeneralSicPovm> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::domain("t", format!("t = {t} must be finite and nonnegative")));
    }
    if d < 2 {
        return Err(Error::domain("dimension", format!("d = {d}, need d >= 2")));
    }
    let a = a_for_t(d, t);
    if a <= 1.0 / (d as f64).powi(3) {
        return Err(Error::domain(
            "t",
            format!("t = {t} gives a = 1/d³; a must exceed 1/d³"),
        ));
    }
    let center = 1.0 / (d * d) as f64;
    let mut elements = Vec::with_capacity(d * d);
    for (i, g) in gsic_directions(d)?.iter().enumerate() {
        let p = affine_element(center, t, g);
        let eigenvalue = min_eigenvalue(&p);
        if eigenvalue < -POSITIVITY_TOL {
            return Err(Error::InfeasibleT {
                t,
                index: format!("i={i}"),
                eigenvalue,
            });
        }
        elements.push(p);
    }
    let povm = GeneralSicPovm {
        dim: d,
        t: Some(t),
        a,
        elements,
    };
    let report = verify_general_sic(&povm);
    if !report.holds {
        return Err(Error::Certification(report.summary()));
    }
    Ok(povm)
}

/// Largest `t` keeping every general-SIC element positive semidefinite.
pub fn max_feasible_t_gsic(d: usize) -> Result<f64> {
    Ok(max_feasible_t(1.0 / (d * d) as f64, &gsic_directions(d)?))
}

/// Tetrahedral qubit SIC-POVM `P_i = (I + n_i·σ)/4`.
pub fn sic_qubit() -> GeneralSicPovm {
    let s = 1.0 / 3f64.sqrt();
    let dirs = [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]];
    let paulis = [Observable::pauli_x(), Observable::pauli_y(), Observable::pauli_z()];
    let elements = dirs
        .iter()
        .map(|n| {
            let m = n
                .iter()
                .zip(paulis.iter())
                .fold(identity(2), |acc, (&c, p)| acc + p.matrix() * Complex64::new(c * s, 0.0));
            Observable::symmetrized(m * Complex64::new(0.25, 0.0))
        })
        .collect();
    GeneralSicPovm {
        dim: 2,
        t: None,
        a: 0.25,
        elements,
    }
}

/// Residuals of every defining general-SIC identity.
pub fn verify_general_sic(g: &GeneralSicPovm) -> ValidationReport {
    let d = g.dim;
    let df = d as f64;
    let mut report = ValidationReport::new(g.elements.len());

    let shape_ok = g.elements.len() == d * d && g.elements.iter().all(|p| p.dim() == d);
    report.check(
        "shape",
        if shape_ok { 0.0 } else { 1.0 },
        0.0,
        (!shape_ok).then(|| format!("expected {} elements of dimension {d}", d * d)),
    );
    if !shape_ok {
        return report;
    }

    report.check(
        "hermiticity",
        max_hermiticity_residual(&g.elements),
        crate::hermitian::HERMITICITY_TOL,
        None,
    );

    let mut positivity = Worst::new();
    let mut sum = CMatrix::zeros(d, d);
    for (i, p) in g.elements.iter().enumerate() {
        positivity.offer(-min_eigenvalue(p), || format!("i={i}"));
        sum += p.matrix();
    }
    positivity.record(&mut report, "positivity", POSITIVITY_TOL);
    report.check(
        "completeness",
        max_abs(&(sum - identity(d))),
        NORMALIZATION_TOL,
        None,
    );

    let off = (1.0 - df * g.a) / (df * (df * df - 1.0));
    let mut purity = Worst::new();
    let mut cross = Worst::new();
    for (i, x) in g.elements.iter().enumerate() {
        for (k, y) in g.elements.iter().enumerate().skip(i) {
            let tr = x.hs_inner(y);
            if i == k {
                purity.offer((tr - g.a).abs(), || format!("i={i}"));
            } else {
                cross.offer((tr - off).abs(), || format!("({i}, {k})"));
            }
        }
    }
    purity.record(&mut report, "purity", PAIR_TRACE_TOL);
    cross.record(&mut report, "cross-trace", PAIR_TRACE_TOL);

    let lower = 1.0 / df.powi(3);
    let upper = 1.0 / (df * df);
    let range = (lower - g.a).max(g.a - upper).max(0.0);
    report.check(
        "a-range",
        range,
        NORMALIZATION_TOL,
        (range > NORMALIZATION_TOL).then(|| format!("a = {}", g.a)),
    );
    if let Some(t) = g.t {
        report.check(
            "a-closed-form",
            (g.a - a_for_t(d, t)).abs(),
            NORMALIZATION_TOL,
            None,
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{random_density, trace_product};

    #[test]
    fn zero_t_is_rejected() {
        assert!(matches!(build_general_sic(2, 0.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn half_max_t_qubit() {
        let t = max_feasible_t_gsic(2).unwrap();
        let g = build_general_sic(2, t / 2.0).unwrap();
        assert!(g.a() > 1.0 / 8.0 && g.a() <= 0.25);
        assert!(verify_general_sic(&g).holds);
    }

    #[test]
    fn qutrit_cross_trace() {
        let t = max_feasible_t_gsic(3).unwrap() * 0.3;
        let g = build_general_sic(3, t).unwrap();
        let off = (1.0 - 3.0 * g.a()) / 24.0;
        let e = g.elements();
        for i in 0..e.len() {
            for k in 0..e.len() {
                if i != k {
                    assert!((e[i].hs_inner(&e[k]) - off).abs() <= 1e-9);
                }
            }
        }
    }

    #[test]
    fn max_t_bounds() {
        let t = max_feasible_t_gsic(2).unwrap();
        assert!(t > 0.0);
        assert!(a_for_t(2, t) <= 0.25 + 1e-10);
        let t4 = max_feasible_t_gsic(4).unwrap();
        assert!(build_general_sic(4, t4 * (1.0 - 1e-6)).is_ok());
        assert!(matches!(
            build_general_sic(4, t4 * 1.5),
            Err(Error::InfeasibleT { .. })
        ));
        for k in 1..=5 {
            assert!(build_general_sic(3, max_feasible_t_gsic(3).unwrap() * k as f64 / 5.0 * (1.0 - 1e-6)).is_ok());
        }
    }

    #[test]
    fn bisection_matches_closed_form() {
        for d in 2..=4 {
            let center = 1.0 / (d * d) as f64;
            let closed = gsic_directions(d)
                .unwrap()
                .iter()
                .map(|g| center / -min_eigenvalue(g))
                .fold(f64::INFINITY, f64::min);
            let t = max_feasible_t_gsic(d).unwrap();
            assert!((t - closed).abs() <= 2e-10, "d = {d}");
        }
    }

    #[test]
    fn qubit_sic_values() {
        let g = sic_qubit();
        let r = verify_general_sic(&g);
        assert!(r.holds, "{}", r.summary());
        for (i, x) in g.elements().iter().enumerate() {
            assert!((x.hs_inner(x) - 0.25).abs() <= 1e-15);
            for (k, y) in g.elements().iter().enumerate() {
                if i != k {
                    assert!((x.hs_inner(y) - 1.0 / 12.0).abs() <= 1e-15);
                }
            }
        }
    }

    #[test]
    fn perturbed_element_fails() {
        let g = sic_qubit();
        let mut e = g.elements().to_vec();
        e[2] = e[2].scale(1.001);
        let r = verify_general_sic(&GeneralSicPovm::from_parts(2, None, 0.25, e));
        assert!(!r.holds);
    }

    #[test]
    fn purity_sums() {
        // Σ Tr P_i² = a·d² and Σ Tr(P_i² ρ) = a·d
        for d in 2..=4 {
            let g = build_general_sic(d, max_feasible_t_gsic(d).unwrap() * 0.7).unwrap();
            let rho = random_density(d, d, 77).unwrap();
            let total: f64 = g.elements().iter().map(|p| p.hs_inner(p)).sum();
            let weighted: f64 = g
                .elements()
                .iter()
                .map(|p| trace_product(&(p.matrix() * p.matrix()), rho.matrix()).re)
                .sum();
            let df = d as f64;
            assert!((total - g.a() * df * df).abs() <= 1e-9);
            assert!((weighted - g.a() * df).abs() <= 1e-9);
        }
    }
}
