//! Confluent (Hermite) Newton interpolation and the interpolant `g` whose
//! linear-programming value gives the upper energy bound.

use serde::Serialize;

use crate::cardbounds::Branch;
use crate::error::{Error, Result};
use crate::orthopoly::{adjacent_roots, gegenbauer_expand, JacobiSpec};
use crate::polynomial::Polynomial;
use crate::potentials::Potential;
use crate::tolerance::{D1_MIN_GRID_POINTS, D2_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Multiplicity {
    /// Match the value.
    Simple,
    /// Match value and first derivative.
    Double,
}

impl Multiplicity {
    pub fn count(self) -> usize {
        match self {
            Multiplicity::Simple => 1,
            Multiplicity::Double => 2,
        }
    }
}

/// Interpolation nodes with multiplicities together with the target potential.
pub struct InterpolationScheme<'a> {
    nodes: Vec<(f64, Multiplicity)>,
    target: &'a dyn Potential,
}

impl<'a> InterpolationScheme<'a> {
    /// Nodes must be strictly increasing in `[-1, 1)`; doubled nodes must be
    /// interior (`> -1`).
    pub fn new(nodes: Vec<(f64, Multiplicity)>, target: &'a dyn Potential) -> Result<Self> {
        let increasing = nodes.windows(2).all(|w| w[0].0 < w[1].0);
        let inside = nodes
            .iter()
            .all(|&(t, m)| (-1.0..1.0).contains(&t) && (m == Multiplicity::Simple || t > -1.0));
        if nodes.is_empty() || !increasing || !inside {
            return Err(Error::InvalidNodes);
        }
        if nodes.iter().any(|&(_, m)| m == Multiplicity::Double) && !target.supports_order(1) {
            return Err(Error::UnsupportedDerivative {
                order: 1,
                max: target.max_derivative_order().unwrap_or(0),
            });
        }
        Ok(Self { nodes, target })
    }

    pub fn nodes(&self) -> &[(f64, Multiplicity)] {
        &self.nodes
    }

    pub fn target(&self) -> &dyn Potential {
        self.target
    }

    pub fn total_conditions(&self) -> usize {
        self.nodes.iter().map(|&(_, m)| m.count()).sum()
    }
}

/// The unique polynomial of degree below `total_conditions` matching values
/// at every node and first derivatives at doubled nodes.
///
/// Divided differences with repeated arguments; the Newton form is then
/// expanded to monomials by Horner's scheme.
pub fn confluent_newton(scheme: &InterpolationScheme<'_>) -> Result<Polynomial> {
    let h = scheme.target;
    let mut z = Vec::with_capacity(scheme.total_conditions());
    for &(t, m) in &scheme.nodes {
        z.extend(std::iter::repeat_n(t, m.count()));
    }
    let size = z.len();
    // column j of the table holds f[z_{i-j}, ..., z_i] in row i
    let mut column: Vec<f64> = z.iter().map(|&t| h.value(t)).collect();
    let mut diag = vec![column[0]];
    for j in 1..size {
        let mut next = vec![0.0; size];
        for i in j..size {
            next[i] = if z[i] == z[i - j] {
                // only j = 1 can repeat since multiplicities are at most 2
                h.derivative(1, z[i])?
            } else {
                (column[i] - column[i - 1]) / (z[i] - z[i - j])
            };
        }
        diag.push(next[j]);
        column = next;
    }
    let mut p = Polynomial::constant(diag[size - 1]);
    for j in (0..size - 1).rev() {
        p = &p.mul_linear(z[j]) + &Polynomial::constant(diag[j]);
    }
    Ok(p)
}

/// Interpolation nodes for strength `tau` and simple node `u`.
///
/// Odd `tau = 2k - 1`: `-1` simple, roots of `P_{k-1}^{1,1}` doubled, `u` simple.
/// Even `tau = 2k`: roots of `P_k^{1,0}` doubled, `u` simple.
pub fn interpolation_nodes(n: u32, tau: u32, u: f64) -> Result<Vec<(f64, Multiplicity)>> {
    if tau < 1 {
        return Err(Error::InvalidStrength { tau, min: 1 });
    }
    let mut nodes = Vec::new();
    match Branch::of(tau) {
        Branch::Odd { k } => {
            nodes.push((-1.0, Multiplicity::Simple));
            if k > 1 {
                for r in adjacent_roots(JacobiSpec::new(n, 1, 1)?, k - 1)? {
                    nodes.push((r, Multiplicity::Double));
                }
            }
        }
        Branch::Even { k } => {
            for r in adjacent_roots(JacobiSpec::new(n, 1, 0)?, k)? {
                nodes.push((r, Multiplicity::Double));
            }
        }
    }
    let node = nodes.last().expect("non-empty").0;
    if !(u > node && u < 1.0) {
        return Err(Error::InvalidU { u, node });
    }
    nodes.push((u, Multiplicity::Simple));
    Ok(nodes)
}

/// The Hermite interpolant `g` of `h` for strength `tau` and simple node `u`.
///
/// Potentials must provide derivatives up to order `tau + 1`.
pub fn build_g(n: u32, tau: u32, u: f64, h: &dyn Potential) -> Result<Polynomial> {
    let order = tau as usize + 1;
    if !h.supports_order(order) {
        return Err(Error::UnsupportedDerivative {
            order,
            max: h.max_derivative_order().unwrap_or(0),
        });
    }
    let scheme = InterpolationScheme::new(interpolation_nodes(n, tau, u)?, h)?;
    confluent_newton(&scheme)
}

/// Largest relative residuals `(value, derivative)` of `g` against the
/// interpolation conditions of `scheme`, scaled by `1 + |h|` and `1 + |h'|`.
pub fn interpolation_residuals(
    g: &Polynomial,
    scheme: &InterpolationScheme<'_>,
) -> Result<(f64, f64)> {
    let h = scheme.target;
    let dg = g.derivative();
    let mut worst = (0.0f64, 0.0f64);
    for &(t, m) in &scheme.nodes {
        let hv = h.value(t);
        worst.0 = worst.0.max((g.eval(t) - hv).abs() / (1.0 + hv.abs()));
        if m == Multiplicity::Double {
            let hd = h.derivative(1, t)?;
            worst.1 = worst.1.max((dg.eval(t) - hd).abs() / (1.0 + hd.abs()));
        }
    }
    Ok(worst)
}

/// Chebyshev-Lobatto points on `[lo, hi]` and the midpoints between them.
pub fn d1_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let (c, r) = (0.5 * (lo + hi), 0.5 * (hi - lo));
    let mut xs: Vec<f64> = (0..points)
        .map(|j| c - r * (std::f64::consts::PI * j as f64 / (points - 1) as f64).cos())
        .collect();
    xs[0] = lo;
    xs[points - 1] = hi;
    let mids: Vec<f64> = xs.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    xs.extend(mids);
    xs
}

/// `max (h - g)` over a Chebyshev grid on `[-1, u]`.
pub fn check_d1(g: &Polynomial, h: &dyn Potential, u: f64, grid_points: usize) -> Result<f64> {
    check_d1_with_nodes(g, h, u, grid_points, &[])
}

/// As [`check_d1`], additionally sampling `extra` points inside `[-1, u]`.
pub fn check_d1_with_nodes(
    g: &Polynomial,
    h: &dyn Potential,
    u: f64,
    grid_points: usize,
    extra: &[f64],
) -> Result<f64> {
    if grid_points < D1_MIN_GRID_POINTS {
        return Err(Error::OutOfRange {
            what: "D1 grid size",
            detail: format!("{grid_points} < {D1_MIN_GRID_POINTS}"),
        });
    }
    let mut worst = f64::NEG_INFINITY;
    let grid = d1_grid(-1.0, u, grid_points);
    for &t in grid
        .iter()
        .chain(extra.iter().filter(|&&t| (-1.0..=u).contains(&t)))
    {
        let gap = h.value(t) - g.eval(t);
        if gap.is_nan() {
            return Ok(f64::INFINITY);
        }
        worst = worst.max(gap);
    }
    Ok(worst)
}

/// All Gegenbauer coefficients of `g` above `tau` are nonpositive.
pub fn check_d2(g: &Polynomial, n: u32, tau: u32) -> Result<bool> {
    let e = gegenbauer_expand(g, n)?;
    Ok(e.coeffs.iter().skip(tau as usize + 1).all(|&c| c <= D2_TOL))
}
