//! Delsarte-Goethals-Seidel cardinality bounds and Levenshtein's bounds
//! `L_tau(n, s)`, including the inversion `M -> s`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orthopoly::{
    adjacent_polynomial, check_dimension, f0_coefficient, gegenbauer_unchecked, largest_root,
    JacobiSpec,
};
use crate::polynomial::Polynomial;
use crate::tolerance::{SOLVE_S_MAX_ITER, SOLVE_S_REL_TOL};

/// Parity split of a strength: `tau = 2k - 1` or `tau = 2k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Odd { k: usize },
    Even { k: usize },
}

impl Branch {
    pub fn of(tau: u32) -> Self {
        let t = tau as usize;
        if t % 2 == 1 {
            Branch::Odd { k: t.div_ceil(2) }
        } else {
            Branch::Even { k: t / 2 }
        }
    }
}

fn check_strength(tau: u32, min: u32) -> Result<()> {
    if tau < min {
        return Err(Error::InvalidStrength { tau, min });
    }
    Ok(())
}

pub(crate) fn binomial(a: u64, b: u64) -> Result<u64> {
    if b > a {
        return Ok(0);
    }
    let b = b.min(a - b);
    let mut r: u128 = 1;
    for j in 1..=u128::from(b) {
        r = r
            .checked_mul(u128::from(a - b) + j)
            .ok_or(Error::Overflow("binomial coefficient"))?
            / j;
    }
    u64::try_from(r).map_err(|_| Error::Overflow("binomial coefficient"))
}

/// `D(n, tau)`: the smallest cardinality a `tau`-design can possibly have.
pub fn dgs_bound(n: u32, tau: u32) -> Result<u64> {
    check_dimension(n)?;
    check_strength(tau, 1)?;
    let n = u64::from(n);
    match Branch::of(tau) {
        Branch::Odd { k } => {
            let k = k as u64;
            binomial(n + k - 2, n - 1)?
                .checked_mul(2)
                .ok_or(Error::Overflow("D(n, tau)"))
        }
        Branch::Even { k } => {
            let k = k as u64;
            binomial(n + k - 1, n - 1)?
                .checked_add(binomial(n + k - 2, n - 1)?)
                .ok_or(Error::Overflow("D(n, tau)"))
        }
    }
}

/// Strength interval containing a cardinality: `D(n, tau) <= M < D(n, tau + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrengthClassification {
    pub n: u32,
    #[serde(rename = "M")]
    pub m: u64,
    pub tau: u32,
    /// `M = D(n, tau)`.
    pub tight: bool,
}

pub fn classify(n: u32, m: u64) -> Result<StrengthClassification> {
    let tau = strength_of(n, m as f64)?;
    let tight = dgs_bound(n, tau)? == m;
    Ok(StrengthClassification { n, m, tau, tight })
}

/// Largest `tau` with `D(n, tau) <= m`, for real `m`.
pub fn strength_of(n: u32, m: f64) -> Result<u32> {
    let d1 = dgs_bound(n, 1)? as f64;
    if !(m >= d1) {
        return Err(Error::InvalidCardinality { m, min: d1 });
    }
    let mut tau = 1;
    while dgs_bound(n, tau + 1)? as f64 <= m {
        tau += 1;
    }
    Ok(tau)
}

/// `d_tau(t)`: `(t + 1) (P_{k-1}^{1,1})^2` for odd and `(P_k^{1,0})^2` for even strength.
pub fn dgs_polynomial(n: u32, tau: u32) -> Result<Polynomial> {
    check_dimension(n)?;
    check_strength(tau, 1)?;
    Ok(match Branch::of(tau) {
        Branch::Odd { k } => {
            let p = adjacent_polynomial(JacobiSpec::new(n, 1, 1)?, k - 1)?;
            (&p * &p).mul_linear(-1.0)
        }
        Branch::Even { k } => {
            let p = adjacent_polynomial(JacobiSpec::new(n, 1, 0)?, k)?;
            &p * &p
        }
    })
}

/// `d_tau(1) / f_0(d_tau)`, which must reproduce `D(n, tau)`.
pub fn lp_cardinality_check(n: u32, tau: u32) -> Result<f64> {
    let d = dgs_polynomial(n, tau)?;
    Ok(d.eval(1.0) / f0_coefficient(&d, n)?)
}

/// Closed interval of `s` on which `L_tau(n, s)` is defined.
///
/// Odd `tau = 2k - 1`: `[t_{k-1}^{1,1}, t_k^{1,0}]`, with left end `-1` when `k = 1`.
/// Even `tau = 2k`: `[t_k^{1,0}, t_k^{1,1}]`. Single-subscript roots are the
/// largest roots.
pub fn branch_interval(n: u32, tau: u32) -> Result<(f64, f64)> {
    check_dimension(n)?;
    check_strength(tau, 1)?;
    let s10 = JacobiSpec::new(n, 1, 0)?;
    let s11 = JacobiSpec::new(n, 1, 1)?;
    Ok(match Branch::of(tau) {
        Branch::Odd { k } => {
            let lo = if k == 1 {
                -1.0
            } else {
                largest_root(s11, k - 1)?
            };
            (lo, largest_root(s10, k)?)
        }
        Branch::Even { k } => (largest_root(s10, k)?, largest_root(s11, k)?),
    })
}

pub(crate) fn levenshtein_unchecked(n: u32, tau: u32, s: f64) -> f64 {
    let nf = f64::from(n);
    let p = |i: usize| gegenbauer_unchecked(n, i, s);
    match Branch::of(tau) {
        Branch::Odd { k } => {
            let kf = k as f64;
            let c = binomial(u64::from(n) + k as u64 - 3, k as u64 - 1).unwrap_or(u64::MAX) as f64;
            let (pk1, pk) = (p(k - 1), p(k));
            c * ((2.0 * kf + nf - 3.0) / (nf - 1.0) - (pk1 - pk) / ((1.0 - s) * pk))
        }
        Branch::Even { k } => {
            let kf = k as f64;
            let c = binomial(u64::from(n) + k as u64 - 2, k as u64).unwrap_or(u64::MAX) as f64;
            let (pk, pk1) = (p(k), p(k + 1));
            c * ((2.0 * kf + nf - 1.0) / (nf - 1.0)
                - (1.0 + s) * (pk - pk1) / ((1.0 - s) * (pk + pk1)))
        }
    }
}

/// Levenshtein's bound `L_tau(n, s)` for `s` inside its branch interval.
pub fn levenshtein_bound(n: u32, tau: u32, s: f64) -> Result<f64> {
    let (lo, hi) = branch_interval(n, tau)?;
    if !(lo..=hi).contains(&s) {
        return Err(Error::Domain { tau, s, lo, hi });
    }
    Ok(levenshtein_unchecked(n, tau, s))
}

/// Find the strength `tau` of `m` and the `s` in its branch with `L_tau(n, s) = m`.
///
/// Cardinalities equal to an interval end (up to the relative tolerance)
/// return that end exactly.
pub fn solve_s_for_cardinality(n: u32, m: f64) -> Result<(u32, f64)> {
    let tau = strength_of(n, m)?;
    let s = solve_s_in_branch(n, tau, m)?;
    Ok((tau, s))
}

pub(crate) fn solve_s_in_branch(n: u32, tau: u32, m: f64) -> Result<f64> {
    let (mut lo, mut hi) = branch_interval(n, tau)?;
    let l = |s: f64| levenshtein_unchecked(n, tau, s);
    let tol = SOLVE_S_REL_TOL * m;
    let (l_lo, l_hi) = (l(lo), l(hi));
    if (l_lo - m).abs() <= tol {
        return Ok(lo);
    }
    if (l_hi - m).abs() <= tol {
        return Ok(hi);
    }
    if !(l_lo < m && m < l_hi) {
        return Err(Error::OutOfRange {
            what: "cardinality",
            detail: format!("M = {m} not within [{l_lo}, {l_hi}] for strength {tau}"),
        });
    }
    for _ in 0..SOLVE_S_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if l(mid) < m {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (r_lo, r_hi) = ((l(lo) - m).abs(), (l(hi) - m).abs());
    let (s, residual) = if r_lo <= r_hi { (lo, r_lo) } else { (hi, r_hi) };
    if residual > tol {
        return Err(Error::NoConvergence {
            m,
            residual: residual / m,
        });
    }
    Ok(s)
}
