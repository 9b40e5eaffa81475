//! One-stop bound computation for a single `(n, M, h)` cell.

use serde::Serialize;

use crate::cardbounds::{dgs_bound, strength_of};
use crate::energy::{
    ell_lower_tau4, explicit_tau2, u_upper, ub2_degree3_with, ub_repr_dgs_from, ub_repr_ulb_from,
    ulb_from_rule, upper_bound,
};
use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::potentials::{abs_monotone_probe, probe_grid, Potential};
use crate::quadrature::{rule_for, QuadratureRule};
use crate::tolerance::D1_GRID_POINTS;

/// Version tag written into every serialized report and CSV header.
pub const SCHEMA_VERSION: u32 = 1;

/// Relative agreement required between the three upper-bound formulas.
pub const REPR_REL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct ReportOptions {
    /// User-supplied upper bound on the largest inner product.
    pub u_override: Option<f64>,
    /// Chebyshev points used by the D1 check.
    pub grid_points: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            u_override: None,
            grid_points: D1_GRID_POINTS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UProvenance {
    /// Closed-form separation lemma for `tau` in `{2, 4}`.
    Lemma,
    UserSupplied,
}

/// Inputs, intermediate objects and every applicable bound for one cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub schema_version: u32,
    pub n: u32,
    #[serde(rename = "M")]
    pub m: f64,
    pub tau: u32,
    pub tight: bool,
    pub potential: String,
    pub abs_monotone: bool,
    pub u_used: Option<f64>,
    pub u_provenance: Option<UProvenance>,
    pub u_lower: f64,
    pub ell_used: Option<f64>,
    pub ulb: f64,
    pub ub_main: Option<f64>,
    pub ub_repr_dgs: Option<f64>,
    pub ub_repr_ulb: Option<f64>,
    pub ub2_deg3: Option<f64>,
    pub ub_explicit_tau2: Option<f64>,
    pub d1_violation: Option<f64>,
    pub d1_grid_points: usize,
    pub rule: QuadratureRule,
    pub interpolant: Option<Polynomial>,
    pub notes: Vec<String>,
}

impl BoundReport {
    /// `(n, M, tau, u, U2, U1, L)`.
    pub fn csv_fields(&self) -> (u32, f64, u32, Option<f64>, Option<f64>, Option<f64>, f64) {
        (
            self.n,
            self.m,
            self.tau,
            self.u_used,
            self.ub2_deg3,
            self.ub_main,
            self.ulb,
        )
    }

    /// True when an upper bound was emitted and certified.
    pub fn certified(&self) -> bool {
        self.ub_main.is_some()
            && self
                .d1_violation
                .is_some_and(|v| v <= crate::tolerance::D1_TOL)
    }
}

fn relative_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// Compute every bound that applies to `(n, m, h)`.
///
/// Tight cardinalities get the lower bound only. For strengths other than
/// 2 and 4 an upper bound needs `u_override`; without it only the lower
/// bound is reported.
pub fn full_report(n: u32, m: f64, h: &dyn Potential, opts: &ReportOptions) -> Result<BoundReport> {
    let tau = strength_of(n, m)?;
    let tight = dgs_bound(n, tau)? as f64 == m;
    let rule = rule_for(n, m)?;
    let ulb = ulb_from_rule(&rule, h);
    let mut notes = Vec::new();

    let probe_order = tau as usize + 1;
    let abs_monotone = match abs_monotone_probe(h, probe_order, &probe_grid(200)) {
        Ok(out) => {
            if let Some(v) = out.violation {
                notes.push(format!(
                    "potential is not absolutely monotone: derivative {} is {:e} at t = {}",
                    v.order, v.value, v.t
                ));
            }
            out.passed
        }
        Err(e) => {
            notes.push(format!("absolute monotonicity not probed: {e}"));
            false
        }
    };

    let mut report = BoundReport {
        schema_version: SCHEMA_VERSION,
        n,
        m,
        tau,
        tight,
        potential: h.description(),
        abs_monotone,
        u_used: None,
        u_provenance: None,
        u_lower: rule.s,
        ell_used: None,
        ulb,
        ub_main: None,
        ub_repr_dgs: None,
        ub_repr_ulb: None,
        ub2_deg3: None,
        ub_explicit_tau2: None,
        d1_violation: None,
        d1_grid_points: opts.grid_points,
        rule,
        interpolant: None,
        notes,
    };

    if tight {
        report.notes.push(format!(
            "tight cardinality M = D({n}, {tau}): upper bound not computed"
        ));
        return Ok(report);
    }

    let (u, provenance) = match opts.u_override {
        Some(u) => {
            if !(u > report.u_lower && u < 1.0) {
                return Err(Error::OutOfRange {
                    what: "u",
                    detail: format!("{u} must lie in ({}, 1)", report.u_lower),
                });
            }
            (u, UProvenance::UserSupplied)
        }
        None => match u_upper(n, m, tau) {
            Ok(u) => (u, UProvenance::Lemma),
            Err(Error::RequiresUserInput { .. }) => {
                report.notes.push(format!(
                    "strength {tau} needs a user-supplied u for the upper bound"
                ));
                return Ok(report);
            }
            Err(e) => return Err(e),
        },
    };

    let ub = upper_bound(n, m, tau, h, u, opts.grid_points)?;
    let repr_dgs = ub_repr_dgs_from(n, m, tau, h, &ub)?;
    let repr_ulb = ub_repr_ulb_from(&report.rule, h, &ub);
    for (name, v) in [("DGS", repr_dgs), ("ULB", repr_ulb)] {
        let gap = relative_gap(ub.value, v);
        if gap > REPR_REL_TOL {
            return Err(Error::NumericalInconsistency(format!(
                "{name} representation differs from the main bound by {gap:e}"
            )));
        }
    }
    let scale = m
        * m
        * report
            .rule
            .nodes
            .iter()
            .map(|&x| h.value(x).abs())
            .fold(0.0, f64::max);
    if ulb > ub.value + 1e-8 * scale {
        return Err(Error::NumericalInconsistency(format!(
            "lower bound {ulb} exceeds upper bound {}",
            ub.value
        )));
    }

    if tau == 4 {
        let ell = ell_lower_tau4(n, m)?;
        report.ell_used = Some(ell);
        match ub2_degree3_with(n, m, h, ell, u) {
            Ok(v) => report.ub2_deg3 = Some(v),
            Err(e) => report
                .notes
                .push(format!("degree-3 comparison bound unavailable: {e}")),
        }
    }
    if tau == 2 && provenance == UProvenance::Lemma {
        report.ub_explicit_tau2 = Some(explicit_tau2(n, m, h)?);
    }
    if !abs_monotone {
        report
            .notes
            .push("upper bound certified on the D1 grid only".into());
    }

    report.u_used = Some(u);
    report.u_provenance = Some(provenance);
    report.ub_main = Some(ub.value);
    report.ub_repr_dgs = Some(repr_dgs);
    report.ub_repr_ulb = Some(repr_ulb);
    report.d1_violation = Some(ub.d1_violation);
    report.interpolant = Some(ub.g);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::{newtonian, polynomial_potential};
    use approx::assert_abs_diff_eq;

    #[test]
    fn three_ten_newton() {
        let r = full_report(3, 10.0, &newtonian(3).unwrap(), &ReportOptions::default()).unwrap();
        assert_eq!(r.tau, 4);
        assert_abs_diff_eq!(r.ub2_deg3.unwrap(), 65.81, epsilon = 0.02);
        assert_abs_diff_eq!(r.ub_main.unwrap(), 65.57, epsilon = 0.02);
        assert_abs_diff_eq!(r.ulb, 65.34, epsilon = 0.02);
        assert_eq!(r.u_provenance, Some(UProvenance::Lemma));
        assert!(r.certified());
        assert!(r.abs_monotone);
    }

    #[test]
    fn user_u_for_tau5() {
        let h = newtonian(4).unwrap();
        let none = full_report(4, 21.0, &h, &ReportOptions::default()).unwrap();
        assert!(none.ub_main.is_none());
        assert_abs_diff_eq!(none.ulb, 246.75, epsilon = 0.02);
        let u = 0.5 * (none.u_lower + 1.0);
        let opts = ReportOptions {
            u_override: Some(u),
            ..Default::default()
        };
        let r = full_report(4, 21.0, &h, &opts).unwrap();
        assert_eq!(r.u_provenance, Some(UProvenance::UserSupplied));
        assert!(r.ub_main.unwrap() >= r.ulb);
        let bad = ReportOptions {
            u_override: Some(none.u_lower - 0.01),
            ..Default::default()
        };
        assert!(full_report(4, 21.0, &h, &bad).is_err());
    }

    #[test]
    fn tight_cardinality_has_lower_bound_only() {
        for n in 3..8 {
            let r = full_report(
                n,
                f64::from(n) + 1.0,
                &newtonian(n).unwrap(),
                &ReportOptions::default(),
            )
            .unwrap();
            assert!(r.tight);
            assert!(r.ub_main.is_none());
            assert!(r.notes.iter().any(|s| s.contains("tight")));
        }
    }

    #[test]
    fn non_monotone_potential_is_flagged() {
        let h = polynomial_potential(Polynomial::new(vec![1.0, 0.0, 0.0, 1.0]));
        let r = full_report(3, 10.0, &h, &ReportOptions::default()).unwrap();
        assert!(!r.abs_monotone);
        assert!(r.notes.iter().any(|s| s.contains("absolutely monotone")));
    }

    #[test]
    fn json_has_schema_version() {
        let r = full_report(5, 8.0, &newtonian(5).unwrap(), &ReportOptions::default()).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["M"], 8.0);
        assert!(v["ub_explicit_tau2"].is_number());
        assert!(v["interpolant"].is_array());
    }
}
