//! Potential functions `h` with exact derivative oracles.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orthopoly::check_dimension;
use crate::polynomial::Polynomial;
use crate::tolerance::ABS_MONOTONE_SLACK;

/// A potential `h : [-1, 1] -> [0, +inf]` together with its derivatives.
///
/// Implementations must return exact derivatives for every order up to
/// [`Potential::max_derivative_order`]; callers never fall back to finite
/// differences.
pub trait Potential: Send + Sync {
    fn value(&self, t: f64) -> f64;

    /// `h^{(k)}(t)`; order 0 is the value.
    fn derivative(&self, k: usize, t: f64) -> Result<f64>;

    /// Highest supported derivative order, `None` when unbounded.
    fn max_derivative_order(&self) -> Option<usize>;

    fn description(&self) -> String;

    fn supports_order(&self, k: usize) -> bool {
        self.max_derivative_order().is_none_or(|m| k <= m)
    }
}

/// Riesz `s`-potential `h(t) = (2 (1 - t))^{-s}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Riesz {
    exponent: f64,
}

impl Riesz {
    pub fn exponent(&self) -> f64 {
        self.exponent
    }
}

pub fn riesz(exponent: f64) -> Result<Riesz> {
    if !(exponent > 0.0) || !exponent.is_finite() {
        return Err(Error::OutOfRange {
            what: "Riesz exponent",
            detail: format!("{exponent} must be positive"),
        });
    }
    Ok(Riesz { exponent })
}

/// Newtonian potential in dimension `n`, the Riesz potential with `s = (n - 2)/2`.
pub fn newtonian(n: u32) -> Result<Riesz> {
    check_dimension(n)?;
    riesz((f64::from(n) - 2.0) / 2.0)
}

impl Potential for Riesz {
    fn value(&self, t: f64) -> f64 {
        (2.0 * (1.0 - t)).powf(-self.exponent)
    }

    fn derivative(&self, k: usize, t: f64) -> Result<f64> {
        if k == 0 {
            return Ok(self.value(t));
        }
        let s = self.exponent;
        // 2^{-s} s (s+1) ... (s+k-1) (1 - t)^{-s-k}
        let rising: f64 = (0..k).map(|j| s + j as f64).product();
        Ok(2f64.powf(-s) * rising * (1.0 - t).powf(-s - k as f64))
    }

    fn max_derivative_order(&self) -> Option<usize> {
        None
    }

    fn description(&self) -> String {
        format!("riesz:{}", self.exponent)
    }
}

/// A polynomial used as a potential; derivatives by coefficient differentiation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialPotential {
    poly: Polynomial,
}

pub fn polynomial_potential(poly: Polynomial) -> PolynomialPotential {
    PolynomialPotential { poly }
}

impl PolynomialPotential {
    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }
}

impl Potential for PolynomialPotential {
    fn value(&self, t: f64) -> f64 {
        self.poly.eval(t)
    }

    fn derivative(&self, k: usize, t: f64) -> Result<f64> {
        Ok(self.poly.eval_derivative(k, t))
    }

    fn max_derivative_order(&self) -> Option<usize> {
        None
    }

    fn description(&self) -> String {
        let cs: Vec<String> = self.poly.coeffs().iter().map(|c| c.to_string()).collect();
        format!(
            "poly:{}",
            if cs.is_empty() {
                "0".to_string()
            } else {
                cs.join(",")
            }
        )
    }
}

/// The first derivative violation found by [`abs_monotone_probe`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonotoneViolation {
    pub order: usize,
    pub t: f64,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeOutcome {
    pub passed: bool,
    pub violation: Option<MonotoneViolation>,
}

/// Check `h^{(k)}(t) >= 0` (up to a small slack) for `k <= max_order` on `grid`.
///
/// Orders are scanned in increasing order, grid points in the given order.
pub fn abs_monotone_probe(
    h: &dyn Potential,
    max_order: usize,
    grid: &[f64],
) -> Result<ProbeOutcome> {
    if !h.supports_order(max_order) {
        return Err(Error::UnsupportedDerivative {
            order: max_order,
            max: h.max_derivative_order().unwrap_or(usize::MAX),
        });
    }
    for k in 0..=max_order {
        for &t in grid {
            let value = h.derivative(k, t)?;
            if !(value >= -ABS_MONOTONE_SLACK) {
                return Ok(ProbeOutcome {
                    passed: false,
                    violation: Some(MonotoneViolation { order: k, t, value }),
                });
            }
        }
    }
    Ok(ProbeOutcome {
        passed: true,
        violation: None,
    })
}

/// `points` equally spaced points in `[-1, 1)`.
pub fn probe_grid(points: usize) -> Vec<f64> {
    (0..points)
        .map(|j| -1.0 + 2.0 * j as f64 / points as f64)
        .collect()
}

/// Textual potential syntax: `riesz:<s>`, `newton`, `poly:<c0,c1,...>`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum PotentialSpec {
    Riesz(f64),
    Newton,
    Poly(Vec<f64>),
}

impl FromStr for PotentialSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::PotentialSyntax(s.to_string());
        let s_trim = s.trim();
        if s_trim == "newton" {
            return Ok(PotentialSpec::Newton);
        }
        let (kind, arg) = s_trim.split_once(':').ok_or_else(bad)?;
        match kind {
            "riesz" => {
                let e: f64 = arg.trim().parse().map_err(|_| bad())?;
                riesz(e).map_err(|_| bad())?;
                Ok(PotentialSpec::Riesz(e))
            }
            "poly" => {
                let cs = arg
                    .split(',')
                    .map(|c| c.trim().parse::<f64>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                if cs.iter().any(|c| !c.is_finite()) {
                    return Err(bad());
                }
                Ok(PotentialSpec::Poly(cs))
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for PotentialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PotentialSpec::Riesz(s) => write!(f, "riesz:{s}"),
            PotentialSpec::Newton => write!(f, "newton"),
            PotentialSpec::Poly(cs) => {
                let parts: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                write!(f, "poly:{}", parts.join(","))
            }
        }
    }
}

impl PotentialSpec {
    /// Instantiate in dimension `n` (needed by `newton`).
    pub fn resolve(&self, n: u32) -> Result<CatalogPotential> {
        Ok(match self {
            PotentialSpec::Riesz(s) => CatalogPotential::Riesz(riesz(*s)?),
            PotentialSpec::Newton => CatalogPotential::Riesz(newtonian(n)?),
            PotentialSpec::Poly(cs) => {
                CatalogPotential::Polynomial(polynomial_potential(Polynomial::new(cs.clone())))
            }
        })
    }
}

/// Any potential reachable from [`PotentialSpec`].
#[derive(Debug, Clone, PartialEq)]
pub enum CatalogPotential {
    Riesz(Riesz),
    Polynomial(PolynomialPotential),
}

impl Potential for CatalogPotential {
    fn value(&self, t: f64) -> f64 {
        match self {
            CatalogPotential::Riesz(h) => h.value(t),
            CatalogPotential::Polynomial(h) => h.value(t),
        }
    }

    fn derivative(&self, k: usize, t: f64) -> Result<f64> {
        match self {
            CatalogPotential::Riesz(h) => h.derivative(k, t),
            CatalogPotential::Polynomial(h) => h.derivative(k, t),
        }
    }

    fn max_derivative_order(&self) -> Option<usize> {
        match self {
            CatalogPotential::Riesz(h) => h.max_derivative_order(),
            CatalogPotential::Polynomial(h) => h.max_derivative_order(),
        }
    }

    fn description(&self) -> String {
        match self {
            CatalogPotential::Riesz(h) => h.description(),
            CatalogPotential::Polynomial(h) => h.description(),
        }
    }
}
