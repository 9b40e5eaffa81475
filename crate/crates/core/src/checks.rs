//! Invariant suites over fixed parameter grids.
//!
//! Each suite expands to a list of [`Case`]s. Cases are independent, so callers
//! may evaluate them in any order or in parallel.

use serde::Serialize;

use crate::cardbounds::{branch_interval, dgs_bound, levenshtein_bound};
use crate::energy::{
    explicit_tau2, u_lower, u_upper, ub_main, ub_repr_dgs_from, ub_repr_ulb_from, ulb_from_rule,
    upper_bound,
};
use crate::orthopoly::f0_coefficient;
use crate::polynomial::Polynomial;
use crate::potentials::{newtonian, polynomial_potential, riesz, Potential};
use crate::quadrature::rule_for;
use crate::report::REPR_REL_TOL;
use crate::tolerance::{D1_GRID_POINTS, RULE_EXACTNESS_TOL};
use crate::Result;

pub const ENDPOINT_REL_TOL: f64 = 1e-8;
pub const WEIGHT_SUM_TOL: f64 = 1e-12;
pub const COLLAPSE_REL_TOL: f64 = 1e-9;
pub const TAU2_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Endpoints,
    Quadrature,
    Representation,
    Collapse,
    Tau2,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Endpoints,
        Suite::Quadrature,
        Suite::Representation,
        Suite::Collapse,
        Suite::Tau2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Endpoints => "endpoints",
            Suite::Quadrature => "quadrature",
            Suite::Representation => "representation",
            Suite::Collapse => "collapse",
            Suite::Tau2 => "tau2",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }

    pub fn tolerance(self) -> f64 {
        match self {
            Suite::Endpoints => ENDPOINT_REL_TOL,
            Suite::Quadrature => RULE_EXACTNESS_TOL,
            Suite::Representation => REPR_REL_TOL,
            Suite::Collapse => COLLAPSE_REL_TOL,
            Suite::Tau2 => TAU2_REL_TOL,
        }
    }

    pub fn cases(self) -> Vec<Case> {
        match self {
            Suite::Endpoints => (3..=24)
                .flat_map(|n| {
                    (1..=5).map(move |k| Case {
                        suite: self,
                        n,
                        tau: k,
                        m: 0,
                    })
                })
                .collect(),
            Suite::Quadrature | Suite::Representation | Suite::Collapse => strength_grid()
                .into_iter()
                .map(|(n, tau, m)| Case {
                    suite: self,
                    n,
                    tau,
                    m,
                })
                .collect(),
            Suite::Tau2 => (3..=24)
                .flat_map(|n| {
                    ((n + 2)..(2 * n)).map(move |m| Case {
                        suite: self,
                        n,
                        tau: 2,
                        m: u64::from(m),
                    })
                })
                .collect(),
        }
    }
}

/// Every `(n, tau, M)` with `3 <= n <= 10`, `2 <= tau <= 5` and integer `M`
/// strictly between `D(n, tau)` and `D(n, tau + 1)`.
pub fn strength_grid() -> Vec<(u32, u32, u64)> {
    let mut out = Vec::new();
    for n in 3..=10 {
        for tau in 2..=5 {
            let lo = dgs_bound(n, tau).expect("small dimension");
            let hi = dgs_bound(n, tau + 1).expect("small dimension");
            out.extend(((lo + 1)..hi).map(|m| (n, tau, m)));
        }
    }
    out
}

/// The `u` used by suites: the lemma value where available, otherwise the
/// midpoint of `(u_lower, 1)`.
pub fn default_u(n: u32, m: f64, tau: u32) -> Result<f64> {
    match tau {
        2 | 4 => u_upper(n, m, tau),
        _ => Ok(0.5 * (u_lower(n, m, tau)? + 1.0)),
    }
}

/// One point of a suite. `tau` holds `k` for the endpoint suite; `m` is unused there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Case {
    pub suite: Suite,
    pub n: u32,
    pub tau: u32,
    #[serde(rename = "M")]
    pub m: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub case: Case,
    /// Largest discrepancy observed, in the suite's metric.
    pub worst: f64,
    pub error: Option<String>,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.worst <= self.case.suite.tolerance()
    }
}

fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

pub fn run(case: Case) -> CaseResult {
    let outcome = match case.suite {
        Suite::Endpoints => endpoints(case.n, case.tau as usize),
        Suite::Quadrature => quadrature(case.n, case.tau, case.m as f64),
        Suite::Representation => representation(case.n, case.tau, case.m as f64),
        Suite::Collapse => collapse(case.n, case.tau, case.m as f64),
        Suite::Tau2 => tau2(case.n, case.m as f64),
    };
    match outcome {
        Ok(worst) => CaseResult {
            case,
            worst,
            error: None,
        },
        Err(e) => CaseResult {
            case,
            worst: f64::INFINITY,
            error: Some(e.to_string()),
        },
    }
}

fn endpoints(n: u32, k: usize) -> Result<f64> {
    let odd = 2 * k as u32 - 1;
    let (left, right) = branch_interval(n, odd)?;
    let d_odd = dgs_bound(n, odd)? as f64;
    let d_even = dgs_bound(n, odd + 1)? as f64;
    let mut worst = rel(levenshtein_bound(n, odd, left)?, d_odd)
        .max(rel(levenshtein_bound(n, odd, right)?, d_even))
        .max(rel(levenshtein_bound(n, odd + 1, right)?, d_even));
    // L_0 does not exist, so the k = 1 left identity has only one side.
    if k > 1 {
        worst = worst.max(rel(levenshtein_bound(n, odd - 1, left)?, d_odd));
    }
    Ok(worst)
}

fn quadrature(n: u32, tau: u32, m: f64) -> Result<f64> {
    let rule = rule_for(n, m)?;
    if rule.tau != tau {
        return Ok(f64::INFINITY);
    }
    if rule.weights.iter().any(|&w| !(w > 0.0)) {
        return Ok(f64::INFINITY);
    }
    let sum: f64 = rule.weights.iter().sum();
    let sum_err = (sum - (m - 1.0) / m).abs();
    // rescale so the weight-sum tolerance maps onto the suite tolerance
    let sum_metric = sum_err * RULE_EXACTNESS_TOL / WEIGHT_SUM_TOL;
    Ok(rule
        .node_equation_residual()
        .max(rule.exactness_residual(tau as usize)?)
        .max(sum_metric))
}

fn representation(n: u32, tau: u32, m: f64) -> Result<f64> {
    let rule = rule_for(n, m)?;
    let u = default_u(n, m, tau)?;
    let mut worst: f64 = 0.0;
    for h in [newtonian(n)?, riesz(1.0)?, riesz(3.0)?] {
        let ub = upper_bound(n, m, tau, &h, u, D1_GRID_POINTS)?;
        let dgs = ub_repr_dgs_from(n, m, tau, &h, &ub)?;
        let via_ulb = ub_repr_ulb_from(&rule, &h, &ub);
        worst = worst.max(rel(ub.value, dgs)).max(rel(ub.value, via_ulb));
    }
    Ok(worst)
}

/// Degree-`tau` test polynomial with positive coefficients.
pub fn collapse_polynomial(tau: u32) -> Polynomial {
    Polynomial::new((0..=tau).map(|j| 1.0 / f64::from(j + 1)).collect())
}

fn collapse(n: u32, tau: u32, m: f64) -> Result<f64> {
    let h = polynomial_potential(collapse_polynomial(tau));
    let exact = m * m * f0_coefficient(h.polynomial(), n)? - m * h.value(1.0);
    let rule = rule_for(n, m)?;
    let lower = ulb_from_rule(&rule, &h);
    let upper = ub_main(n, m, tau, &h, default_u(n, m, tau)?)?;
    Ok(rel(lower, exact).max(rel(upper, exact)))
}

fn tau2(n: u32, m: f64) -> Result<f64> {
    let u = u_upper(n, m, 2)?;
    let mut worst: f64 = 0.0;
    for h in [newtonian(n)?, riesz(1.0)?] {
        worst = worst.max(rel(explicit_tau2(n, m, &h)?, ub_main(n, m, 2, &h, u)?));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::from_name("nope"), None);
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(Suite::Endpoints.cases().len(), 22 * 5);
        // n = 3: D = 4, 6, 10, 12, 16 -> 1 + 3 + 1 + 3
        assert_eq!(strength_grid().iter().filter(|c| c.0 == 3).count(), 8);
    }

    #[test]
    fn sample_cases_pass() {
        for case in [
            Case {
                suite: Suite::Endpoints,
                n: 3,
                tau: 1,
                m: 0,
            },
            Case {
                suite: Suite::Endpoints,
                n: 7,
                tau: 4,
                m: 0,
            },
            Case {
                suite: Suite::Quadrature,
                n: 3,
                tau: 4,
                m: 10,
            },
            Case {
                suite: Suite::Representation,
                n: 4,
                tau: 5,
                m: 25,
            },
            Case {
                suite: Suite::Collapse,
                n: 5,
                tau: 3,
                m: 15,
            },
            Case {
                suite: Suite::Tau2,
                n: 20,
                tau: 2,
                m: 25,
            },
        ] {
            let r = run(case);
            assert!(r.passed(), "{r:?}");
        }
    }
}
