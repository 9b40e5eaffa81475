//! Universal lower bounds and Hermite-interpolation upper bounds for the
//! potential energy of spherical designs.
//!
//! The crate is organized bottom-up:
//!
//! * [`orthopoly`]: Gegenbauer and adjacent Jacobi polynomials, moments, expansions.
//! * [`cardbounds`]: the Delsarte-Goethals-Seidel bound `D(n, tau)` and Levenshtein's `L_tau(n, s)`.
//! * [`quadrature`]: the `1/M` quadrature rule.
//! * [`potentials`]: absolutely monotone potentials with derivative oracles.
//! * [`hermite`]: confluent Newton interpolation and the interpolant `g`.
//! * [`energy`]: the energy bounds, point sets and full reports.
//! * [`checks`]: invariant suites shared by the test harness and the CLI.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cardbounds;
pub mod checks;
pub mod energy;
pub mod error;
pub mod hermite;
pub mod orthopoly;
pub mod pointset;
pub mod polynomial;
pub mod potentials;
pub mod quadrature;
pub mod report;
mod roots;
pub mod tolerance;

pub use cardbounds::{
    classify, dgs_bound, levenshtein_bound, solve_s_for_cardinality, StrengthClassification,
};
pub use energy::{ub_main, ulb};
pub use error::{Error, Result};
pub use orthopoly::{GegenbauerExpansion, JacobiSpec};
pub use pointset::PointSet;
pub use polynomial::Polynomial;
pub use potentials::{Potential, PotentialSpec};
pub use quadrature::{dgs_rule, rule_for, QuadratureRule};
pub use report::{full_report, BoundReport, ReportOptions};
