//! Levenshtein's `1/M`-quadrature rule.
//!
//! For a cardinality `M` with strength `tau` the rule reads
//! `f_0 = f(1)/M + sum_i w_i f(x_i)` and is exact for every polynomial of
//! degree at most `tau`. The interior nodes are the roots of
//! `P_k(t) P_{k-1}(s) = P_k(s) P_{k-1}(t)` with `P = P^{1,0}` (odd strength)
//! or `P = P^{1,1}` (even strength, plus the node `-1`), where `s` solves
//! `L_tau(n, s) = M` and is itself the largest node.

use serde::Serialize;

use crate::cardbounds::{dgs_bound, solve_s_in_branch, strength_of, Branch};
use crate::error::{Error, Result};
use crate::orthopoly::{
    adjacent_roots, adjacent_with_derivative, check_dimension, f0_coefficient, weight_moments,
    JacobiSpec,
};
use crate::polynomial::Polynomial;
use crate::roots::{bisect, sign};
use crate::tolerance::{RULE_EXACTNESS_TOL, SOLVE_S_REL_TOL};

/// A `1/M` quadrature rule on `[-1, 1]` with a point mass `1/M` at `t = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureRule {
    pub n: u32,
    #[serde(rename = "M")]
    pub m: f64,
    pub tau: u32,
    pub s: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub endpoint_mass: f64,
    /// Which node equation produced the nodes.
    #[serde(skip)]
    equation: Branch,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `value_at_one / M + sum_i w_i values[i]`.
    pub fn apply(&self, values: &[f64], value_at_one: f64) -> Result<f64> {
        if values.len() != self.nodes.len() {
            return Err(Error::LengthMismatch {
                expected: self.nodes.len(),
                got: values.len(),
            });
        }
        let inner: f64 = self.weights.iter().zip(values).map(|(w, v)| w * v).sum();
        Ok(self.endpoint_mass * value_at_one + inner)
    }

    /// `sum_i w_i f(x_i)`, the part of the rule away from `t = 1`.
    pub fn interior_sum(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, w)| w * f(x))
            .sum()
    }

    /// The rule applied to a polynomial; equals `f0_coefficient` up to degree `tau`.
    pub fn integrate(&self, p: &Polynomial) -> f64 {
        self.endpoint_mass * p.eval(1.0) + self.interior_sum(|x| p.eval(x))
    }

    /// `max_{j <= degree} |m_j - rule(t^j)|`.
    pub fn exactness_residual(&self, degree: usize) -> Result<f64> {
        exactness_residual(
            self.n,
            self.endpoint_mass,
            &self.nodes,
            &self.weights,
            degree,
        )
    }

    /// Largest `|P_k(x) P_{k-1}(s) - P_k(s) P_{k-1}(x)|` over the interior nodes.
    pub fn node_equation_residual(&self) -> f64 {
        let (spec, k, skip) = match self.equation {
            Branch::Odd { k } => (JacobiSpec::new(self.n, 1, 0), k, 0),
            Branch::Even { k } => (JacobiSpec::new(self.n, 1, 1), k, 1),
        };
        let spec = spec.expect("validated at construction");
        let eq = NodeEquation::new(spec, k, self.s);
        self.nodes
            .iter()
            .skip(skip)
            .map(|&x| eq.value(x).abs())
            .fold(0.0, f64::max)
    }
}

fn exactness_residual(
    n: u32,
    mass: f64,
    nodes: &[f64],
    weights: &[f64],
    degree: usize,
) -> Result<f64> {
    let m = weight_moments(n, degree)?;
    let mut worst = 0.0f64;
    for (j, mj) in m.iter().enumerate() {
        let approx: f64 = mass
            + nodes
                .iter()
                .zip(weights)
                .map(|(&x, w)| w * x.powi(j as i32))
                .sum::<f64>();
        worst = worst.max((approx - mj).abs());
    }
    Ok(worst)
}

/// `F(t) = P_k(t) P_{k-1}(s) - P_k(s) P_{k-1}(t)` for one adjacent family.
struct NodeEquation {
    spec: JacobiSpec,
    k: usize,
    s: f64,
    pk_s: f64,
    pk1_s: f64,
}

impl NodeEquation {
    fn new(spec: JacobiSpec, k: usize, s: f64) -> Self {
        let pk_s = adjacent_with_derivative(spec, k, s).0;
        let pk1_s = adjacent_with_derivative(spec, k - 1, s).0;
        Self {
            spec,
            k,
            s,
            pk_s,
            pk1_s,
        }
    }

    fn value(&self, t: f64) -> f64 {
        let pk = adjacent_with_derivative(self.spec, self.k, t).0;
        let pk1 = adjacent_with_derivative(self.spec, self.k - 1, t).0;
        pk * self.pk1_s - self.pk_s * pk1
    }

    fn derivative(&self, t: f64) -> f64 {
        let dk = adjacent_with_derivative(self.spec, self.k, t).1;
        let dk1 = adjacent_with_derivative(self.spec, self.k - 1, t).1;
        dk * self.pk1_s - self.pk_s * dk1
    }

    /// The `k` roots, increasing, the last one being `s`.
    ///
    /// The other `k - 1` roots are those of `G(t) = F(t) / (t - s)`, which
    /// alternates in sign on the roots of `P_{k-1}`; brackets are
    /// `-1, t_{k-1,1}, ..., t_{k-1,k-1}, s`.
    fn roots(&self) -> Result<Vec<f64>> {
        if self.k == 1 {
            return Ok(vec![self.s]);
        }
        let prev = adjacent_roots(self.spec, self.k - 1)?;
        let mut edges = Vec::with_capacity(self.k + 1);
        edges.push(-1.0);
        edges.extend_from_slice(&prev);
        edges.push(self.s);
        // sign(G) = -sign(F) left of s; G(s) = F'(s)
        let g = |t: f64| -self.value(t);
        let sign_at = |i: usize, t: f64| {
            if i == edges.len() - 1 {
                sign(self.derivative(t))
            } else {
                sign(g(t))
            }
        };
        let mut found = Vec::with_capacity(self.k);
        for i in 0..edges.len() - 1 {
            let (lo, hi) = (edges[i], edges[i + 1]);
            let (s_lo, s_hi) = (sign_at(i, lo), sign_at(i + 1, hi));
            if s_lo == 0 && i == 0 {
                found.push(lo);
                continue;
            }
            if s_lo == 0 || s_hi == 0 || s_lo == s_hi {
                continue;
            }
            found.push(bisect(g, lo, hi, s_lo).0);
        }
        if found.len() != self.k - 1 {
            return Err(Error::RootIsolation {
                expected: self.k - 1,
                found: found.len(),
            });
        }
        found.push(self.s);
        Ok(found)
    }
}

/// Weights making the rule exact on the Lagrange basis of `nodes`, with the
/// mass `1/M` at `t = 1` moved to the right-hand side.
fn lagrange_weights(n: u32, m: f64, nodes: &[f64]) -> Result<Vec<f64>> {
    nodes
        .iter()
        .enumerate()
        .map(|(i, &xi)| {
            let others: Vec<f64> = nodes
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &x)| x)
                .collect();
            let denom: f64 = others.iter().map(|&x| xi - x).product();
            let basis = Polynomial::from_roots(&others).scale(1.0 / denom);
            Ok(f0_coefficient(&basis, n)? - basis.eval(1.0) / m)
        })
        .collect()
}

fn assemble(n: u32, m: f64, tau: u32, equation: Branch, nodes: Vec<f64>) -> Result<QuadratureRule> {
    if nodes.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::RuleConstruction(format!(
            "nodes not strictly increasing: {nodes:?}"
        )));
    }
    let weights = lagrange_weights(n, m, &nodes)?;
    if let Some((i, w)) = weights.iter().enumerate().find(|(_, &w)| !(w > 0.0)) {
        return Err(Error::RuleConstruction(format!(
            "weight {i} at node {} is not positive ({w:e})",
            nodes[i]
        )));
    }
    let endpoint_mass = 1.0 / m;
    let residual = exactness_residual(n, endpoint_mass, &nodes, &weights, tau as usize)?;
    if residual > RULE_EXACTNESS_TOL {
        return Err(Error::RuleConstruction(format!(
            "exactness residual {residual:e} up to degree {tau} exceeds {RULE_EXACTNESS_TOL:e}"
        )));
    }
    let s = *nodes.last().expect("at least one node");
    Ok(QuadratureRule {
        n,
        m,
        tau,
        s,
        nodes,
        weights,
        endpoint_mass,
        equation,
    })
}

/// The `1/M` rule for cardinality `m`, whose strength is `tau(n, m)`.
///
/// `m` equal to some `D(n, tau)` yields [`dgs_rule`]; `m < D(n, 2)` is rejected.
pub fn rule_for(n: u32, m: f64) -> Result<QuadratureRule> {
    check_dimension(n)?;
    let min = dgs_bound(n, 2)? as f64;
    if !(m >= min) || !m.is_finite() {
        return Err(Error::InvalidCardinality { m, min });
    }
    let tau = strength_of(n, m)?;
    let d = dgs_bound(n, tau)? as f64;
    if (m - d).abs() <= SOLVE_S_REL_TOL * m {
        let mut rule = dgs_rule(n, tau)?;
        rule.m = m;
        return Ok(rule);
    }
    let s = solve_s_in_branch(n, tau, m)?;
    let branch = Branch::of(tau);
    let nodes = match branch {
        Branch::Odd { k } => NodeEquation::new(JacobiSpec::new(n, 1, 0)?, k, s).roots()?,
        Branch::Even { k } => {
            let mut nodes = vec![-1.0];
            nodes.extend(NodeEquation::new(JacobiSpec::new(n, 1, 1)?, k, s).roots()?);
            nodes
        }
    };
    assemble(n, m, tau, branch, nodes)
}

/// The rule at the tight cardinality `M = D(n, tau)`.
///
/// Even `tau = 2k`: nodes are the roots of `P_k^{1,0}`. Odd `tau = 2k - 1`:
/// nodes are `-1` together with the roots of `P_{k-1}^{1,1}`.
pub fn dgs_rule(n: u32, tau: u32) -> Result<QuadratureRule> {
    check_dimension(n)?;
    if tau < 2 {
        return Err(Error::InvalidStrength { tau, min: 2 });
    }
    let m = dgs_bound(n, tau)? as f64;
    let (equation, nodes) = match Branch::of(tau) {
        Branch::Even { k } => (
            Branch::Odd { k },
            adjacent_roots(JacobiSpec::new(n, 1, 0)?, k)?,
        ),
        Branch::Odd { k } => {
            let mut nodes = vec![-1.0];
            nodes.extend(adjacent_roots(JacobiSpec::new(n, 1, 1)?, k - 1)?);
            (Branch::Even { k: k - 1 }, nodes)
        }
    };
    assemble(n, m, tau, equation, nodes)
}

/// `value_at_one / M + sum_i w_i values[i]`.
pub fn apply_rule(rule: &QuadratureRule, values: &[f64], value_at_one: f64) -> Result<f64> {
    rule.apply(values, value_at_one)
}
