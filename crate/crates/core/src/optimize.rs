//! Scalar golden-section maximization and bracketed root finding, used to
//! cross-check the closed-form optima.

use crate::error::{QiError, Result};

/// Iteration cap for [`maximize_1d`].
pub const MAX_ITERATIONS: usize = 200;

/// Default relative tolerance on the maximizing argument.
pub const DEFAULT_TOL: f64 = 1e-10;

const INV_PHI: f64 = 0.618_033_988_749_894_9; // 1/φ
const INV_PHI_SQ: f64 = 0.381_966_011_250_105_1; // 1/φ²

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub arg: f64,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Golden-section search for the maximum of `f` on `[lo, hi]`.
///
/// `f` is assumed unimodal on the bracket. Iterates until the bracket width
/// falls below `tol` relative to the argument magnitude, or
/// [`MAX_ITERATIONS`] is reached. Fully deterministic.
pub fn maximize_1d<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<Maximum>
where
    F: FnMut(f64) -> f64,
{
    if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(QiError::Bracket { lo, hi });
    }
    if !(tol > 0.0) {
        return Err(QiError::Domain {
            name: "tol",
            value: tol,
            reason: "tolerance must be positive",
        });
    }

    let (mut a, mut b) = (lo, hi);
    let mut c = a + INV_PHI_SQ * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut iterations = 0;
    let mut converged = false;

    while iterations < MAX_ITERATIONS {
        let scale = a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
        if b - a <= tol * scale {
            converged = true;
            break;
        }
        iterations += 1;
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = a + INV_PHI_SQ * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }

    let (arg, value) = if fc >= fd { (c, fc) } else { (d, fd) };
    Ok(Maximum {
        arg,
        value,
        iterations,
        converged,
    })
}

/// Bisection root of `f` on `[lo, hi]`; requires a sign change.
pub fn bisect<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if !(lo < hi) {
        return Err(QiError::Bracket { lo, hi });
    }
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(QiError::Bracket { lo, hi });
    }
    for _ in 0..MAX_ITERATIONS {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 || b - a <= tol * m.abs().max(f64::MIN_POSITIVE) {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabola() {
        let m = maximize_1d(|x| -(x - 2.0) * (x - 2.0), 0.0, 5.0, DEFAULT_TOL).unwrap();
        assert!((m.arg - 2.0).abs() < 1e-9);
        assert!(m.converged);
        assert!(m.iterations <= MAX_ITERATIONS);
    }

    #[test]
    fn inverted_bracket() {
        assert!(matches!(
            maximize_1d(|x| x, 5.0, 0.0, DEFAULT_TOL),
            Err(QiError::Bracket { .. })
        ));
    }

    #[test]
    fn edge_maximum() {
        let m = maximize_1d(|x| x, 0.0, 1.0, DEFAULT_TOL).unwrap();
        assert!((m.arg - 1.0).abs() < 1e-9);
    }

    #[test]
    fn deterministic() {
        let f = |x: f64| (x * 3.0).sin() - 0.1 * x;
        let a = maximize_1d(f, 0.0, 1.0, DEFAULT_TOL).unwrap();
        let b = maximize_1d(f, 0.0, 1.0, DEFAULT_TOL).unwrap();
        assert_eq!(a.arg.to_bits(), b.arg.to_bits());
    }

    #[test]
    fn bisection() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
        assert!(bisect(|x| x * x + 1.0, 0.0, 2.0, 1e-12).is_err());
    }
}
