//! Numerical thresholds shared across the crate.
//!
//! Each constant is the single place the corresponding check reads its
//! threshold from; tests and the CLI check-suite use the same values.

/// Largest polynomial degree accepted by the recurrences.
pub const MAX_DEGREE: usize = 64;

/// Bracket width at which root bisection stops and Newton polishing starts.
pub const ROOT_BISECTION_WIDTH: f64 = 1e-14;

/// Iteration cap for solving `L_tau(n, s) = M` by bisection.
pub const SOLVE_S_MAX_ITER: usize = 200;

/// Relative residual required of `L_tau(n, s) - M` after bisection.
pub const SOLVE_S_REL_TOL: f64 = 1e-12;

/// Exactness residual on monomials of degree at most tau.
pub const RULE_EXACTNESS_TOL: f64 = 1e-10;

/// Default number of Chebyshev points for the D1 grid check.
pub const D1_GRID_POINTS: usize = 10_001;

/// Smallest grid accepted by the D1 check.
pub const D1_MIN_GRID_POINTS: usize = 1_001;

/// Maximum admissible value of `h - g` on `[-1, u]`.
pub const D1_TOL: f64 = 1e-9;

/// Slack for "nonnegative" derivative probes.
pub const ABS_MONOTONE_SLACK: f64 = 1e-12;

/// Gegenbauer coefficients above tau must not exceed this.
pub const D2_TOL: f64 = 1e-12;
