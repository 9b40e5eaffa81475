//! Energy bounds for spherical `tau`-designs of cardinality `M`.
//!
//! All bounds are absolute energies `sum_{x != y} h(<x, y>)` unless a
//! function name says otherwise; divide by `M^2` for the normalized form.

use crate::cardbounds::{dgs_bound, strength_of};
use crate::error::{Error, Result};
use crate::hermite::{build_g, check_d1_with_nodes, interpolation_nodes};
use crate::orthopoly::{check_degree, f0_coefficient, gegenbauer_sequence};
use crate::pointset::PointSet;
use crate::polynomial::Polynomial;
use crate::potentials::Potential;
use crate::quadrature::{dgs_rule, rule_for, QuadratureRule};
use crate::tolerance::{D1_GRID_POINTS, D1_TOL};

/// The `1/M` rule, after checking that `tau` is the strength implied by `m`.
pub fn rule_with_strength(n: u32, m: f64, tau: u32) -> Result<QuadratureRule> {
    let actual = strength_of(n, m)?;
    if actual != tau {
        return Err(Error::StrengthMismatch {
            requested: tau,
            actual,
            m,
        });
    }
    rule_for(n, m)
}

/// `M^2 sum_i w_i h(x_i)` on a prepared rule.
pub fn ulb_from_rule(rule: &QuadratureRule, h: &dyn Potential) -> f64 {
    rule.m * rule.m * rule.interior_sum(|x| h.value(x))
}

/// Universal lower bound on the `h`-energy of a `tau`-design of `m` points.
pub fn ulb(n: u32, m: f64, tau: u32, h: &dyn Potential) -> Result<f64> {
    Ok(ulb_from_rule(&rule_with_strength(n, m, tau)?, h))
}

/// An upper bound `M (g_0 M - g(1))` with its certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct UpperBound {
    pub g: Polynomial,
    pub g0: f64,
    pub u: f64,
    pub value: f64,
    /// `max (h - g)` on the D1 grid over `[-1, u]`.
    pub d1_violation: f64,
}

/// Build `g`, certify D1 on `grid_points` Chebyshev points and evaluate the bound.
pub fn upper_bound(
    n: u32,
    m: f64,
    tau: u32,
    h: &dyn Potential,
    u: f64,
    grid_points: usize,
) -> Result<UpperBound> {
    let actual = strength_of(n, m)?;
    if actual != tau {
        return Err(Error::StrengthMismatch {
            requested: tau,
            actual,
            m,
        });
    }
    let g = build_g(n, tau, u, h)?;
    let nodes: Vec<f64> = interpolation_nodes(n, tau, u)?
        .iter()
        .map(|&(t, _)| t)
        .collect();
    let d1_violation = check_d1_with_nodes(&g, h, u, grid_points, &nodes)?;
    if !(d1_violation <= D1_TOL) {
        return Err(Error::D1Violation {
            violation: d1_violation,
            tolerance: D1_TOL,
        });
    }
    let g0 = f0_coefficient(&g, n)?;
    let value = m * (g0 * m - g.eval(1.0));
    Ok(UpperBound {
        g,
        g0,
        u,
        value,
        d1_violation,
    })
}

/// `M (g_0 M - g(1))` for the Hermite interpolant at the DGS nodes and `u`.
pub fn ub_main(n: u32, m: f64, tau: u32, h: &dyn Potential, u: f64) -> Result<f64> {
    Ok(upper_bound(n, m, tau, h, u, D1_GRID_POINTS)?.value)
}

/// The same bound through the `1/D(n, tau)` rule:
/// `M^2 [g_0 (1 - D/M) + (D/M) sum_i w_i h(x_i)]`, summed over the DGS nodes.
pub fn ub_repr_dgs_from(
    n: u32,
    m: f64,
    tau: u32,
    h: &dyn Potential,
    ub: &UpperBound,
) -> Result<f64> {
    let rule = dgs_rule(n, tau)?;
    let d = dgs_bound(n, tau)? as f64;
    let inner = rule.interior_sum(|x| h.value(x));
    Ok(m * m * (ub.g0 * (1.0 - d / m) + d / m * inner))
}

pub fn ub_repr_dgs(n: u32, m: f64, tau: u32, h: &dyn Potential, u: f64) -> Result<f64> {
    let ub = upper_bound(n, m, tau, h, u, D1_GRID_POINTS)?;
    ub_repr_dgs_from(n, m, tau, h, &ub)
}

/// The same bound as `ULB + M^2 sum_i w_i (g(x_i) - h(x_i))` over the `1/M` rule.
pub fn ub_repr_ulb_from(rule: &QuadratureRule, h: &dyn Potential, ub: &UpperBound) -> f64 {
    let correction = rule.interior_sum(|x| ub.g.eval(x) - h.value(x));
    ulb_from_rule(rule, h) + rule.m * rule.m * correction
}

pub fn ub_repr_ulb(n: u32, m: f64, tau: u32, h: &dyn Potential, u: f64) -> Result<f64> {
    let rule = rule_with_strength(n, m, tau)?;
    let ub = upper_bound(n, m, tau, h, u, D1_GRID_POINTS)?;
    Ok(ub_repr_ulb_from(&rule, h, &ub))
}

/// Closed-form upper bounds on the largest inner product of a `tau`-design,
/// available for `tau = 2` (`M` in `[n+1, 2n]`) and `tau = 4`
/// (`M` in `[n(n+3)/2, n(n+1)]`).
pub fn u_upper(n: u32, m: f64, tau: u32) -> Result<f64> {
    let nf = f64::from(n);
    let (lo, hi) = match tau {
        2 | 4 => (dgs_bound(n, tau)? as f64, dgs_bound(n, tau + 1)? as f64),
        _ => return Err(Error::RequiresUserInput { tau }),
    };
    if !(lo..=hi).contains(&m) {
        return Err(Error::OutOfRange {
            what: "cardinality",
            detail: format!("M = {m} outside [{lo}, {hi}] for strength {tau}"),
        });
    }
    Ok(if tau == 2 {
        (m - 2.0) / nf - 1.0
    } else {
        2.0 * (3.0 + ((nf - 1.0) * ((nf + 2.0) * m - 3.0 * (nf + 3.0))).sqrt()) / (nf * (nf + 2.0))
            - 1.0
    })
}

/// Lower bound on the largest inner product: the largest `1/M` node `s`.
pub fn u_lower(n: u32, m: f64, tau: u32) -> Result<f64> {
    Ok(rule_with_strength(n, m, tau)?.s)
}

/// Lower bound on the smallest inner product of a 4-design, clamped at `-1`.
pub fn ell_lower_tau4(n: u32, m: f64) -> Result<f64> {
    let tau = strength_of(n, m)?;
    if tau != 4 {
        return Err(Error::OutOfRange {
            what: "cardinality",
            detail: format!("M = {m} has strength {tau}, expected 4"),
        });
    }
    let nf = f64::from(n);
    let ell = 1.0 - 2.0 / nf * (1.0 + ((nf - 1.0) * (m - 2.0) / (nf + 2.0)).sqrt());
    Ok(ell.max(-1.0))
}

/// The earlier degree-3 upper bound for 4-designs (interpolation at `l`,
/// a doubled `a_0`, and `u`), used for comparison.
pub fn ub2_degree3(n: u32, m: f64, h: &dyn Potential) -> Result<f64> {
    let ell = ell_lower_tau4(n, m)?;
    let u = u_upper(n, m, 4)?;
    ub2_degree3_with(n, m, h, ell, u)
}

pub fn ub2_degree3_with(n: u32, m: f64, h: &dyn Potential, ell: f64, u: f64) -> Result<f64> {
    let nf = f64::from(n);
    let denom = nf * (1.0 - ell) * (1.0 - u) - m * (1.0 + ell * u * nf);
    if denom == 0.0 || !denom.is_finite() {
        return Err(Error::Degenerate("a_0 denominator vanishes"));
    }
    let a0 = (m * (ell + u) + nf * (1.0 - ell) * (1.0 - u)) / denom;
    if u == ell || ell == a0 || u == a0 {
        return Err(Error::Degenerate("coincident interpolation nodes"));
    }
    let (h_l, h_a, h_u) = (h.value(ell), h.value(a0), h.value(u));
    let t_l = (h_l - h_a)
        * (u * m * (1.0 + nf * a0 * a0) + 2.0 * m * a0 + nf * (1.0 - u) * (1.0 - a0).powi(2))
        / (nf * (u - ell) * (ell - a0).powi(2));
    let t_u = (h_u - h_a)
        * (ell * m * (1.0 + nf * a0 * a0) + 2.0 * m * a0 + nf * (1.0 - ell) * (1.0 - a0).powi(2))
        / (nf * (u - ell) * (u - a0).powi(2));
    Ok(m * ((m - 1.0) * h_a + t_l - t_u))
}

/// Closed-form upper bound for 2-designs (`M` in `(n+1, 2n)`), as an absolute energy.
pub fn explicit_tau2(n: u32, m: f64, h: &dyn Potential) -> Result<f64> {
    let nf = f64::from(n);
    if !(m > nf + 1.0 && m < 2.0 * nf) {
        return Err(Error::OutOfRange {
            what: "cardinality",
            detail: format!("M = {m} outside ({}, {})", n + 1, 2 * n),
        });
    }
    let x = -1.0 / nf;
    let hx = h.value(x);
    let dx = h.derivative(1, x)?;
    let gap = (m - 1.0) / nf - 1.0;
    let a = (h.value((m - 2.0) / nf - 1.0) - hx - gap * dx) / (gap * gap);
    let per_m2 = (m - 1.0) / m * (hx + dx / nf + a * (nf + 1.0) / (nf * nf))
        - (nf * dx + a * (nf + 1.0)) / (nf * m);
    Ok(per_m2 * m * m)
}

/// Normalized (per `M^2`) lower and upper ends of the asymptotic strip for
/// 2-designs with `M ~ lambda n`.
pub fn asymptotic_strip(lambda: f64, m: f64, h: &dyn Potential) -> Result<(f64, f64)> {
    if !(lambda > 1.0 && lambda < 2.0) {
        return Err(Error::OutOfRange {
            what: "lambda",
            detail: format!("{lambda} not in (1, 2)"),
        });
    }
    if !(m > 0.0) {
        return Err(Error::OutOfRange {
            what: "cardinality",
            detail: format!("{m} must be positive"),
        });
    }
    let h0 = h.value(0.0);
    let d0 = h.derivative(1, 0.0)?;
    let scale = m * (lambda - 1.0);
    let lower = h0 + (h.value(1.0 - lambda) - lambda * h0) / scale;
    let upper = h0 + (h.value(lambda - 1.0) - h0 - 2.0 * (lambda - 1.0) * d0) / scale;
    Ok((lower, upper))
}

/// `sum_{x != y} h(<x, y>)` over ordered pairs.
pub fn pair_energy(points: &PointSet, h: &dyn Potential) -> f64 {
    let gram = points.inner_products();
    let mut total = 0.0;
    for (i, row) in gram.iter().enumerate() {
        for (j, &t) in row.iter().enumerate() {
            if i != j {
                total += h.value(t.clamp(-1.0, 1.0));
            }
        }
    }
    total
}

/// Largest `tau <= max_tau` for which `sum_{x, y} P_i^{(n)}(<x, y>)` vanishes
/// (within `tol * M^2`) for every `1 <= i <= tau`.
///
/// Each such sum is a sum of squares and therefore nonnegative; a value
/// below `-tol * M^2` is reported as an error.
pub fn design_strength(points: &PointSet, max_tau: usize, tol: f64) -> Result<u32> {
    check_degree(max_tau)?;
    let n = u32::try_from(points.dim()).map_err(|_| Error::InvalidPointSet("dimension".into()))?;
    if n < 3 {
        return Err(Error::InvalidDimension(n));
    }
    let m2 = (points.len() * points.len()) as f64;
    let mut sums = vec![0.0; max_tau + 1];
    for row in points.inner_products() {
        for t in row {
            for (acc, p) in sums
                .iter_mut()
                .zip(gegenbauer_sequence(n, max_tau, t.clamp(-1.0, 1.0)))
            {
                *acc += p;
            }
        }
    }
    let mut tau = 0;
    for (i, &s) in sums.iter().enumerate().skip(1) {
        if s < -tol * m2 {
            return Err(Error::NumericalInconsistency(format!(
                "Gegenbauer sum of degree {i} is negative ({s:e})"
            )));
        }
        if s > tol * m2 {
            break;
        }
        tau = i as u32;
    }
    Ok(tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::{newtonian, polynomial_potential, riesz};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn constant_potential_collapses() {
        let h = polynomial_potential(Polynomial::constant(2.0));
        for &(n, m) in &[(3u32, 10.0), (4, 17.0), (5, 7.0), (4, 25.0)] {
            let tau = strength_of(n, m).unwrap();
            let expect = m * (m - 1.0) * 2.0;
            assert_relative_eq!(ulb(n, m, tau, &h).unwrap(), expect, max_relative = 1e-12);
        }
        let ub = ub_main(3, 10.0, 4, &h, 7.0 / 15.0).unwrap();
        assert_relative_eq!(ub, 180.0, max_relative = 1e-12);
        assert_relative_eq!(
            ub_repr_dgs(3, 10.0, 4, &h, 7.0 / 15.0).unwrap(),
            180.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn linear_potential_ulb() {
        let (a, b) = (1.5, 0.25);
        let h = polynomial_potential(Polynomial::new(vec![a, b]));
        let (n, m) = (5, 23.0);
        assert_relative_eq!(
            ulb(n, m, 4, &h).unwrap(),
            m * (m - 1.0) * a - m * b,
            max_relative = 1e-12
        );
    }

    #[test]
    fn reference_single_values() {
        assert_abs_diff_eq!(
            ulb(4, 17.0, 4, &newtonian(4).unwrap()).unwrap(),
            153.125,
            epsilon = 0.005
        );
        let h = newtonian(3).unwrap();
        let u = u_upper(3, 10.0, 4).unwrap();
        assert_abs_diff_eq!(ub_main(3, 10.0, 4, &h, u).unwrap(), 65.57, epsilon = 0.02);
        assert_abs_diff_eq!(ub2_degree3(3, 10.0, &h).unwrap(), 65.81, epsilon = 0.02);
        assert_abs_diff_eq!(
            ub2_degree3(5, 29.0, &newtonian(5).unwrap()).unwrap(),
            477.22,
            epsilon = 0.02
        );
        let h4 = newtonian(4).unwrap();
        let u4 = u_upper(4, 15.0, 4).unwrap();
        assert_abs_diff_eq!(
            ub_repr_dgs(4, 15.0, 4, &h4, u4).unwrap(),
            115.62,
            epsilon = 0.02
        );
    }

    #[test]
    fn strength_mismatch_is_rejected() {
        let h = riesz(1.0).unwrap();
        assert!(matches!(
            ulb(3, 10.0, 5, &h),
            Err(Error::StrengthMismatch { actual: 4, .. })
        ));
    }

    #[test]
    fn polynomial_potential_ub_equals_ulb() {
        let p = Polynomial::new(vec![0.5, 0.3, 0.2, 0.1, 0.05]);
        let h = polynomial_potential(p.clone());
        let (n, m) = (4, 17.0);
        let direct = m * m * f0_coefficient(&p, n).unwrap() - m * p.eval(1.0);
        let u = u_upper(n, m, 4).unwrap();
        assert_relative_eq!(ulb(n, m, 4, &h).unwrap(), direct, max_relative = 1e-9);
        assert_relative_eq!(
            ub_main(n, m, 4, &h, u).unwrap(),
            direct,
            max_relative = 1e-9
        );
        assert_abs_diff_eq!(
            ub_repr_ulb(n, m, 4, &h, u).unwrap(),
            direct,
            epsilon = 1e-9 * direct
        );
    }

    #[test]
    fn u_bounds() {
        assert_abs_diff_eq!(u_upper(20, 28.0, 2).unwrap(), 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(u_upper(3, 10.0, 4).unwrap(), 7.0 / 15.0, epsilon = 1e-15);
        for n in 3..20 {
            let nf = f64::from(n);
            assert_abs_diff_eq!(u_upper(n, nf + 1.0, 2).unwrap(), -1.0 / nf, epsilon = 1e-15);
        }
        assert!(matches!(
            u_upper(3, 13.0, 5),
            Err(Error::RequiresUserInput { tau: 5 })
        ));
        assert!(u_upper(3, 20.0, 4).is_err());
        let (lo, hi) = (u_lower(3, 10.0, 4).unwrap(), u_upper(3, 10.0, 4).unwrap());
        assert!(lo < hi);
    }

    #[test]
    fn ell_examples() {
        let expect = 1.0 - 2.0 / 3.0 * (1.0 + (16.0f64 / 5.0).sqrt());
        assert_abs_diff_eq!(ell_lower_tau4(3, 10.0).unwrap(), expect, epsilon = 1e-15);
        assert_abs_diff_eq!(ell_lower_tau4(3, 10.0).unwrap(), -0.85924, epsilon = 1e-5);
        let expect = 1.0 - 0.5 * (1.0 + (39.0f64 / 6.0).sqrt());
        assert_abs_diff_eq!(ell_lower_tau4(4, 15.0).unwrap(), expect, epsilon = 1e-15);
        assert!(ell_lower_tau4(3, 13.0).is_err());
    }

    #[test]
    fn explicit_tau2_constant_and_pipeline() {
        let c = polynomial_potential(Polynomial::constant(3.0));
        assert_relative_eq!(
            explicit_tau2(10, 15.0, &c).unwrap(),
            15.0 * 14.0 * 3.0,
            max_relative = 1e-12
        );
        let h = newtonian(20).unwrap();
        let e = explicit_tau2(20, 28.0, &h).unwrap();
        assert!(e.is_finite());
        let u = u_upper(20, 28.0, 2).unwrap();
        assert_relative_eq!(e, ub_main(20, 28.0, 2, &h, u).unwrap(), max_relative = 1e-9);
        assert!(explicit_tau2(20, 21.0, &h).is_err());
        assert!(explicit_tau2(20, 40.0, &h).is_err());
    }

    #[test]
    fn asymptotic_strip_examples() {
        let c = polynomial_potential(Polynomial::constant(2.0));
        let (lo, hi) = asymptotic_strip(1.5, 100.0, &c).unwrap();
        assert_relative_eq!(lo, 2.0 * 99.0 / 100.0, max_relative = 1e-14);
        assert_relative_eq!(hi, 2.0, max_relative = 1e-14);
        let h = riesz(1.0).unwrap();
        for lambda in [1.1, 1.5, 1.9] {
            let (lo, hi) = asymptotic_strip(lambda, 1000.0, &h).unwrap();
            assert!(lo <= hi);
            let (lo, hi) = asymptotic_strip(lambda, 1e12, &h).unwrap();
            assert_abs_diff_eq!(lo, 0.5, epsilon = 1e-10);
            assert_abs_diff_eq!(hi, 0.5, epsilon = 1e-10);
        }
        assert!(asymptotic_strip(1.0, 10.0, &h).is_err());
        assert!(asymptotic_strip(2.0, 10.0, &h).is_err());
    }

    #[test]
    fn octahedron_energy_and_strength() {
        let oct = PointSet::cross_polytope(3);
        let expect = 24.0 / 2f64.sqrt() + 3.0;
        assert_relative_eq!(
            pair_energy(&oct, &newtonian(3).unwrap()),
            expect,
            max_relative = 1e-14
        );
        let cube = polynomial_potential(Polynomial::new(vec![1.0, 0.0, 0.0, 1.0]));
        assert_eq!(pair_energy(&oct, &cube), 24.0);
        let c = polynomial_potential(Polynomial::constant(0.5));
        assert_eq!(pair_energy(&oct, &c), 15.0);
        assert_eq!(design_strength(&oct, 10, 1e-12).unwrap(), 3);
    }

    #[test]
    fn simple_design_strengths() {
        for n in 3..8 {
            assert_eq!(
                design_strength(&PointSet::antipodal_pair(n), 8, 1e-12).unwrap(),
                1
            );
            assert_eq!(
                design_strength(&PointSet::regular_simplex(n), 8, 1e-12).unwrap(),
                2
            );
            assert_eq!(
                design_strength(&PointSet::cross_polytope(n), 8, 1e-12).unwrap(),
                3
            );
        }
    }

    #[test]
    fn coincident_points_give_infinite_energy() {
        let p = PointSet::new(vec![vec![1.0, 0.0, 0.0], vec![1.0, 0.0, 0.0]]).unwrap();
        assert_eq!(pair_energy(&p, &riesz(1.0).unwrap()), f64::INFINITY);
    }
}
