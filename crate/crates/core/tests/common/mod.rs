//! Test-only oracles, independent of the library's recurrences and moments.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Gauss-Legendre nodes and weights on [-1, 1] via Newton on the Legendre recurrence.
pub fn gauss_legendre(order: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(order);
    for i in 0..order {
        let mut x = (PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=order {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = order as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// `int f dmu_n` computed as `int_0^pi f(cos th) sin^{n-2} th dth` over its
/// normalization, by composite Gauss-Legendre in `th`.
pub fn sphere_average(n: u32, f: impl Fn(f64) -> f64) -> f64 {
    let rule = gauss_legendre(20);
    let panels = 64;
    let h = PI / panels as f64;
    let (mut num, mut den) = (0.0, 0.0);
    for p in 0..panels {
        let a = p as f64 * h;
        for &(x, w) in &rule {
            let th = a + 0.5 * h * (x + 1.0);
            let weight = 0.5 * h * w * th.sin().powi(n as i32 - 2);
            num += weight * f(th.cos());
            den += weight;
        }
    }
    num / den
}

/// Eigenvalues of the order-2 Jacobi matrix for parameters (alpha, beta),
/// i.e. the two roots of the degree-2 Jacobi polynomial.
pub fn jacobi_degree2_roots(alpha: f64, beta: f64) -> (f64, f64) {
    let diag = |j: f64| {
        let s = 2.0 * j + alpha + beta;
        if beta == alpha {
            return 0.0;
        }
        (beta * beta - alpha * alpha) / (s * (s + 2.0))
    };
    let (a0, a1) = (diag(0.0), diag(1.0));
    let s = 2.0 + alpha + beta;
    let b2 =
        4.0 * (1.0 + alpha) * (1.0 + beta) * (1.0 + alpha + beta) / (s * s * (s + 1.0) * (s - 1.0));
    let mid = 0.5 * (a0 + a1);
    let rad = (0.25 * (a0 - a1).powi(2) + b2).sqrt();
    (mid - rad, mid + rad)
}

/// Relative difference scaled by the larger magnitude.
pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}
