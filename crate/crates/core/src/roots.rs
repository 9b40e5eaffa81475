//! Bracketed scalar root refinement shared by the polynomial families and
//! the quadrature node equation.

use crate::tolerance::ROOT_BISECTION_WIDTH;

/// Sign of `v`, treating exact zero as its own class.
pub(crate) fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Bisect `f` on `[lo, hi]` given the sign of `f` at `lo` (the sign at `hi`
/// must be opposite). Returns the midpoint of the final bracket together
/// with that bracket.
pub(crate) fn bisect<F>(f: F, mut lo: f64, mut hi: f64, sign_lo: i8) -> (f64, f64, f64)
where
    F: Fn(f64) -> f64,
{
    while hi - lo > ROOT_BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = sign(f(mid));
        if s == 0 {
            return (mid, mid, mid);
        }
        if s == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (0.5 * (lo + hi), lo, hi)
}

/// A few Newton steps from `x`, rejecting any step that leaves `[lo, hi]`.
pub(crate) fn newton_polish<F>(fdf: F, mut x: f64, lo: f64, hi: f64) -> f64
where
    F: Fn(f64) -> (f64, f64),
{
    for _ in 0..3 {
        let (v, d) = fdf(x);
        if v == 0.0 || d == 0.0 || !d.is_finite() {
            break;
        }
        let next = x - v / d;
        if !(lo..=hi).contains(&next) || next == x {
            break;
        }
        x = next;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_then_polish_sqrt2() {
        let f = |x: f64| x * x - 2.0;
        let (x, lo, hi) = bisect(f, 0.0, 2.0, -1);
        assert!(hi - lo <= 1e-14);
        let x = newton_polish(|x| (x * x - 2.0, 2.0 * x), x, lo, hi);
        assert!((x - 2f64.sqrt()).abs() < 1e-15);
    }
}
