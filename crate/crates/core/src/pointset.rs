//! Explicit finite point sets on the unit sphere.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const NORM_TOL: f64 = 1e-12;

/// `M` unit vectors in `R^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    dim: usize,
    points: Vec<Vec<f64>>,
}

impl PointSet {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let dim = points
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidPointSet("empty".into()))?;
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::InvalidPointSet(format!(
                    "point {i} has dimension {}",
                    p.len()
                )));
            }
            let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > NORM_TOL {
                return Err(Error::InvalidPointSet(format!("point {i} has norm {norm}")));
            }
        }
        Ok(Self { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    /// `<x_i, x_j>` for every ordered pair.
    pub fn inner_products(&self) -> Vec<Vec<f64>> {
        self.points
            .iter()
            .map(|x| {
                self.points
                    .iter()
                    .map(|y| x.iter().zip(y).map(|(a, b)| a * b).sum())
                    .collect()
            })
            .collect()
    }

    /// `{e, -e}` in `R^n`.
    pub fn antipodal_pair(n: usize) -> Self {
        let mut e = vec![0.0; n];
        e[0] = 1.0;
        let minus: Vec<f64> = e.iter().map(|x| -x).collect();
        Self {
            dim: n,
            points: vec![e, minus],
        }
    }

    /// `{+-e_i}`, the `2n` vertices of the cross-polytope.
    pub fn cross_polytope(n: usize) -> Self {
        let mut points = Vec::with_capacity(2 * n);
        for i in 0..n {
            for sign in [1.0, -1.0] {
                let mut p = vec![0.0; n];
                p[i] = sign;
                points.push(p);
            }
        }
        Self { dim: n, points }
    }

    /// The `n + 1` vertices of a regular simplex, pairwise inner product `-1/n`.
    pub fn regular_simplex(n: usize) -> Self {
        Self {
            dim: n,
            points: simplex(n),
        }
    }
}

fn simplex(n: usize) -> Vec<Vec<f64>> {
    if n == 1 {
        return vec![vec![1.0], vec![-1.0]];
    }
    let nf = n as f64;
    let r = (1.0 - 1.0 / (nf * nf)).sqrt();
    let mut out = Vec::with_capacity(n + 1);
    let mut apex = vec![0.0; n];
    apex[0] = 1.0;
    out.push(apex);
    for w in simplex(n - 1) {
        let mut p = Vec::with_capacity(n);
        p.push(-1.0 / nf);
        p.extend(w.iter().map(|x| r * x));
        out.push(p);
    }
    out
}
