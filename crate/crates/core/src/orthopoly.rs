//! Gegenbauer polynomials and the adjacent Jacobi families.
//!
//! All polynomials here are normalized to take the value 1 at `t = 1`.
//! `P_i^{(n)}` is orthogonal for the weight `(1 - t^2)^((n - 3)/2)`; the
//! adjacent family `P_i^{a,b}` uses Jacobi parameters
//! `(a + (n - 3)/2, b + (n - 3)/2)` with `a, b` in `{0, 1}`.
//!
//! Moments and zeroth coefficients are taken against the probability measure
//! `dmu_n` proportional to the Gegenbauer weight, so that `f0(1) = 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::roots::{bisect, newton_polish, sign};
use crate::tolerance::MAX_DEGREE;

pub(crate) fn check_dimension(n: u32) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidDimension(n));
    }
    Ok(())
}

pub(crate) fn check_degree(degree: usize) -> Result<()> {
    if degree > MAX_DEGREE {
        return Err(Error::UnsupportedDegree {
            degree,
            max: MAX_DEGREE,
        });
    }
    Ok(())
}

/// An adjacent Jacobi family `P_i^{a,b}` in dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JacobiSpec {
    n: u32,
    a: u8,
    b: u8,
}

impl JacobiSpec {
    pub fn new(n: u32, a: u8, b: u8) -> Result<Self> {
        check_dimension(n)?;
        if a > 1 || b > 1 {
            return Err(Error::InvalidFamily { a, b });
        }
        Ok(Self { n, a, b })
    }

    /// `P^{0,0} = P^{(n)}`.
    pub fn gegenbauer(n: u32) -> Result<Self> {
        Self::new(n, 0, 0)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> u8 {
        self.a
    }

    pub fn b(&self) -> u8 {
        self.b
    }

    pub fn alpha(&self) -> f64 {
        f64::from(self.a) + (f64::from(self.n) - 3.0) / 2.0
    }

    pub fn beta(&self) -> f64 {
        f64::from(self.b) + (f64::from(self.n) - 3.0) / 2.0
    }

    /// Coefficients `(c_lin, c_const, c_prev, c_div)` of the standard Jacobi
    /// recurrence `c_div P_{i+1} = (c_const + c_lin t) P_i - c_prev P_{i-1}`.
    fn recurrence(&self, i: usize) -> (f64, f64, f64, f64) {
        let (al, be) = (self.alpha(), self.beta());
        let i = i as f64;
        let s = 2.0 * i + al + be;
        let c_div = 2.0 * (i + 1.0) * (i + al + be + 1.0) * s;
        let c_const = (s + 1.0) * (al * al - be * be);
        let c_lin = s * (s + 1.0) * (s + 2.0);
        let c_prev = 2.0 * (i + al) * (i + be) * (s + 2.0);
        (c_lin, c_const, c_prev, c_div)
    }

    /// Unnormalized Jacobi value and derivative at `t`.
    fn raw_with_derivative(&self, i: usize, t: f64) -> (f64, f64) {
        let (al, be) = (self.alpha(), self.beta());
        if i == 0 {
            return (1.0, 0.0);
        }
        let (mut p_prev, mut d_prev) = (1.0, 0.0);
        let mut p = (al + 1.0) + (al + be + 2.0) * (t - 1.0) / 2.0;
        let mut d = (al + be + 2.0) / 2.0;
        for j in 1..i {
            let (c_lin, c_const, c_prev, c_div) = self.recurrence(j);
            let p_next = ((c_const + c_lin * t) * p - c_prev * p_prev) / c_div;
            let d_next = ((c_const + c_lin * t) * d + c_lin * p - c_prev * d_prev) / c_div;
            p_prev = p;
            d_prev = d;
            p = p_next;
            d = d_next;
        }
        (p, d)
    }

    fn value_at_one(&self, i: usize) -> f64 {
        self.raw_with_derivative(i, 1.0).0
    }
}

/// `P_i^{(n)}(t)` from the three-term recurrence
/// `(i + n - 2) P_{i+1} = (2i + n - 2) t P_i - i P_{i-1}`.
pub fn gegenbauer_eval(n: u32, i: usize, t: f64) -> Result<f64> {
    check_dimension(n)?;
    check_degree(i)?;
    Ok(gegenbauer_unchecked(n, i, t))
}

pub(crate) fn gegenbauer_unchecked(n: u32, i: usize, t: f64) -> f64 {
    let nf = f64::from(n);
    if i == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, t);
    for j in 1..i {
        let jf = j as f64;
        let next = ((2.0 * jf + nf - 2.0) * t * cur - jf * prev) / (jf + nf - 2.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// All of `P_0^{(n)}(t), ..., P_max^{(n)}(t)`.
pub(crate) fn gegenbauer_sequence(n: u32, max: usize, t: f64) -> Vec<f64> {
    let nf = f64::from(n);
    let mut out = Vec::with_capacity(max + 1);
    out.push(1.0);
    if max >= 1 {
        out.push(t);
    }
    for j in 1..max {
        let jf = j as f64;
        let next = ((2.0 * jf + nf - 2.0) * t * out[j] - jf * out[j - 1]) / (jf + nf - 2.0);
        out.push(next);
    }
    out
}

/// `P_i^{a,b}(t)`, normalized so that the value at 1 is 1.
pub fn adjacent_eval(spec: JacobiSpec, i: usize, t: f64) -> Result<f64> {
    check_degree(i)?;
    Ok(adjacent_with_derivative(spec, i, t).0)
}

/// `P_i^{a,b}(t)` and its derivative, both under the value-one normalization.
pub fn adjacent_with_derivative(spec: JacobiSpec, i: usize, t: f64) -> (f64, f64) {
    let scale = spec.value_at_one(i);
    let (p, d) = spec.raw_with_derivative(i, t);
    (p / scale, d / scale)
}

/// Increasing roots `t_{i,1} < ... < t_{i,i}` of `P_i^{a,b}`.
///
/// Roots of degree `d` are bracketed by the roots of degree `d - 1`
/// (interlacing), bisected and then Newton-polished.
pub fn adjacent_roots(spec: JacobiSpec, i: usize) -> Result<Vec<f64>> {
    check_degree(i)?;
    if i == 0 {
        return Err(Error::OutOfRange {
            what: "root degree",
            detail: "degree must be at least 1".into(),
        });
    }
    let mut prev: Vec<f64> = Vec::new();
    for d in 1..=i {
        let f = |t: f64| spec.raw_with_derivative(d, t).0;
        let mut edges = Vec::with_capacity(d + 1);
        edges.push(-1.0);
        edges.extend_from_slice(&prev);
        edges.push(1.0);
        let mut found = Vec::with_capacity(d);
        for w in edges.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let (s_lo, s_hi) = (sign(f(lo)), sign(f(hi)));
            if s_lo == 0 || s_hi == 0 || s_lo == s_hi {
                continue;
            }
            let (x, blo, bhi) = bisect(f, lo, hi, s_lo);
            let x = newton_polish(|t| spec.raw_with_derivative(d, t), x, blo, bhi);
            found.push(x);
        }
        if found.len() != d {
            return Err(Error::RootIsolation {
                expected: d,
                found: found.len(),
            });
        }
        prev = found;
    }
    Ok(prev)
}

/// Largest root `t_{i,i}^{a,b}`.
pub fn largest_root(spec: JacobiSpec, i: usize) -> Result<f64> {
    Ok(*adjacent_roots(spec, i)?.last().expect("i >= 1"))
}

/// Moments `m_j = int t^j dmu_n(t)` for `j = 0..=max_degree`.
pub fn weight_moments(n: u32, max_degree: usize) -> Result<Vec<f64>> {
    check_dimension(n)?;
    let nf = f64::from(n);
    let mut m = Vec::with_capacity(max_degree + 1);
    for j in 0..=max_degree {
        let v = match j {
            0 => 1.0,
            1 => 0.0,
            _ => (j as f64 - 1.0) / (j as f64 + nf - 2.0) * m[j - 2],
        };
        m.push(v);
    }
    Ok(m)
}

/// Zeroth Gegenbauer coefficient `f_0 = int p dmu_n`.
pub fn f0_coefficient(p: &Polynomial, n: u32) -> Result<f64> {
    check_degree(p.degree())?;
    let m = weight_moments(n, p.degree())?;
    Ok(p.coeffs().iter().zip(&m).map(|(c, mj)| c * mj).sum())
}

/// Monomial form of `P_i^{(n)}`.
pub fn gegenbauer_polynomial(n: u32, i: usize) -> Result<Polynomial> {
    check_dimension(n)?;
    check_degree(i)?;
    Ok(gegenbauer_basis(n, i).pop().expect("non-empty"))
}

fn gegenbauer_basis(n: u32, max: usize) -> Vec<Polynomial> {
    let nf = f64::from(n);
    let mut out = vec![Polynomial::constant(1.0)];
    if max >= 1 {
        out.push(Polynomial::monomial(1));
    }
    for j in 1..max {
        let jf = j as f64;
        let lin = out[j]
            .mul_linear(0.0)
            .scale((2.0 * jf + nf - 2.0) / (jf + nf - 2.0));
        let next = &lin - &out[j - 1].scale(jf / (jf + nf - 2.0));
        out.push(next);
    }
    out
}

/// Monomial form of `P_i^{a,b}` (value 1 at `t = 1`).
pub fn adjacent_polynomial(spec: JacobiSpec, i: usize) -> Result<Polynomial> {
    check_degree(i)?;
    let (al, be) = (spec.alpha(), spec.beta());
    let mut prev = Polynomial::constant(1.0);
    if i == 0 {
        return Ok(prev);
    }
    let mut cur = Polynomial::new(vec![
        (al + 1.0) - (al + be + 2.0) / 2.0,
        (al + be + 2.0) / 2.0,
    ]);
    for j in 1..i {
        let (c_lin, c_const, c_prev, c_div) = spec.recurrence(j);
        let next = &(&cur.mul_linear(0.0).scale(c_lin / c_div) + &cur.scale(c_const / c_div))
            - &prev.scale(c_prev / c_div);
        prev = cur;
        cur = next;
    }
    Ok(cur.scale(1.0 / spec.value_at_one(i)))
}

/// Coefficients `f_i` of `p = sum_i f_i P_i^{(n)}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GegenbauerExpansion {
    pub n: u32,
    pub coeffs: Vec<f64>,
}

impl GegenbauerExpansion {
    /// `sum_i f_i P_i^{(n)}(t)`.
    pub fn eval(&self, t: f64) -> f64 {
        if self.coeffs.is_empty() {
            return 0.0;
        }
        gegenbauer_sequence(self.n, self.coeffs.len() - 1, t)
            .iter()
            .zip(&self.coeffs)
            .map(|(p, f)| p * f)
            .sum()
    }

    pub fn coeff(&self, i: usize) -> f64 {
        self.coeffs.get(i).copied().unwrap_or(0.0)
    }
}

/// Expand `p` in the Gegenbauer basis by peeling off the leading term.
pub fn gegenbauer_expand(p: &Polynomial, n: u32) -> Result<GegenbauerExpansion> {
    check_dimension(n)?;
    check_degree(p.degree())?;
    let r = p.degree();
    let basis = gegenbauer_basis(n, r);
    let mut rest = p.coeffs().to_vec();
    rest.resize(r + 1, 0.0);
    let mut coeffs = vec![0.0; r + 1];
    for d in (0..=r).rev() {
        let f = rest[d] / basis[d].leading_coeff();
        coeffs[d] = f;
        for (j, c) in basis[d].coeffs().iter().enumerate() {
            rest[j] -= f * c;
        }
        rest[d] = 0.0;
    }
    Ok(GegenbauerExpansion { n, coeffs })
}
