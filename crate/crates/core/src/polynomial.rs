//! Dense univariate polynomials in the monomial basis.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A real polynomial stored by monomial coefficients, `coeffs[j]` multiplying `t^j`.
///
/// Trailing zero coefficients are trimmed on construction, so the degree is
/// the index of the last stored coefficient. The zero polynomial stores no
/// coefficients and reports degree 0.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<f64>", into = "Vec<f64>")]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// `t^j`.
    pub fn monomial(j: usize) -> Self {
        let mut coeffs = vec![0.0; j + 1];
        coeffs[j] = 1.0;
        Self { coeffs }
    }

    /// `prod_j (t - roots[j])`.
    pub fn from_roots(roots: &[f64]) -> Self {
        roots
            .iter()
            .fold(Self::constant(1.0), |acc, &r| acc.mul_linear(r))
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficient of `t^j`, zero beyond the degree.
    pub fn coeff(&self, j: usize) -> f64 {
        self.coeffs.get(j).copied().unwrap_or(0.0)
    }

    pub fn leading_coeff(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    /// Horner evaluation.
    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, &c)| j as f64 * c)
                .collect(),
        )
    }

    /// `k`-th derivative evaluated at `t`.
    pub fn eval_derivative(&self, k: usize, t: f64) -> f64 {
        if k >= self.coeffs.len() {
            return 0.0;
        }
        // d^k/dt^k t^j = j!/(j-k)! t^(j-k)
        self.coeffs
            .iter()
            .enumerate()
            .skip(k)
            .rev()
            .fold(0.0, |acc, (j, &c)| {
                let falling: f64 = ((j - k + 1)..=j).map(|m| m as f64).product();
                acc * t + falling * c
            })
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * factor).collect())
    }

    /// `self * (t - r)`.
    pub fn mul_linear(&self, r: f64) -> Self {
        let mut out = vec![0.0; self.coeffs.len() + 1];
        for (j, &c) in self.coeffs.iter().enumerate() {
            out[j + 1] += c;
            out[j] -= r * c;
        }
        Self::new(out)
    }
}

impl From<Vec<f64>> for Polynomial {
    fn from(coeffs: Vec<f64>) -> Self {
        Self::new(coeffs)
    }
}

impl From<Polynomial> for Vec<f64> {
    fn from(p: Polynomial) -> Self {
        p.coeffs
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c < 0.0 { '-' } else { '+' })?;
            } else if c < 0.0 {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match j {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}*t")?,
                _ => write!(f, "{a}*t^{j}")?,
            }
        }
        Ok(())
    }
}
