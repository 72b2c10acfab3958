//! Adaptive Simpson quadrature.

use crate::error::{Error, Result};
use crate::seqcore::sum::CompensatedSum;

const MAX_DEPTH: u32 = 48;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Sum of the local Richardson error estimates.
    pub error: f64,
}

/// `∫_a^b f` to absolute tolerance `tol` by recursive Simpson bisection.
///
/// Fails with [`Error::Domain`] if `f` returns a non-finite value at a node.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<Quadrature> {
    if a == b {
        return Ok(Quadrature {
            value: 0.0,
            error: 0.0,
        });
    }
    let eval = |t: f64| -> Result<f64> {
        let v = f(t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Domain { t, value: v })
        }
    };
    let fa = eval(a)?;
    let fb = eval(b)?;
    let mid = 0.5 * (a + b);
    let fm = eval(mid)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let mut value = CompensatedSum::new();
    let mut error = 0.0;
    let mut stack = vec![(a, b, fa, fm, fb, whole, tol, 0u32)];
    while let Some((a, b, fa, fm, fb, whole, tol, depth)) = stack.pop() {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = eval(lm)?;
        let frm = eval(rm)?;
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let diff = left + right - whole;
        if depth >= MAX_DEPTH || diff.abs() <= 15.0 * tol {
            value.add(left + right + diff / 15.0);
            error += diff.abs() / 15.0;
        } else {
            // right first so the left half is summed first
            stack.push((m, b, fm, frm, fb, right, 0.5 * tol, depth + 1));
            stack.push((a, m, fa, flm, fm, left, 0.5 * tol, depth + 1));
        }
    }
    Ok(Quadrature {
        value: value.value(),
        error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let q = adaptive_simpson(&|t| t * t * t - t, 0.0, 2.0, 1e-12).unwrap();
        assert!((q.value - 2.0).abs() < 1e-13);
    }

    #[test]
    fn reciprocal() {
        let q = adaptive_simpson(&|t| 1.0 / t, 1.0, std::f64::consts::E, 1e-10).unwrap();
        assert!((q.value - 1.0).abs() < 1e-10);
        assert!(q.error < 1e-9);
    }

    #[test]
    fn singularity_is_a_domain_error() {
        let r = adaptive_simpson(&|t| 1.0 / t, 0.0, 1.0, 1e-10);
        assert!(matches!(r, Err(Error::Domain { .. })));
    }
}
