use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::seqcore::{
    binomial, fit_line, order_estimate, LineFit, OrderVerdict, PolyCoeffs, Seq, Thresholds,
};

use super::regularity::RegularityReport;

/// Minimum window accepted by [`extract_polynomial`].
pub const MIN_EXTRACT_WINDOW: usize = 64;
/// Remainder magnitudes below this are dropped from the decay fit.
pub const DECAY_FIT_FLOOR: f64 = 1e-14;

/// A sequence split as `ψ + remainder` with `ψ` of degree at most `m − 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub m: usize,
    pub s: f64,
    /// Polynomial part; degrees below `max(0, ⌈s⌉)` are zero.
    pub psi: PolyCoeffs,
    /// All fitted coefficients before low degrees were moved to the remainder.
    pub fitted: PolyCoeffs,
    pub lowest_kept_degree: usize,
    pub fit_window: (i64, i64),
    #[serde(skip)]
    pub remainder: Seq,
    pub remainder_max_abs: f64,
    /// Magnitudes at or below this were treated as zero in the verdict.
    pub resolution_floor: f64,
    pub remainder_verdict: OrderVerdict,
    /// Log-log slope of `|r_n|` against `n` on the trailing half.
    pub decay_exponent_fit: Option<LineFit>,
    pub regularity: Option<RegularityReport>,
}

/// Lowest degree kept in the polynomial part for target exponent `s`.
pub fn lowest_kept_degree(s: f64) -> usize {
    s.ceil().max(0.0) as usize
}

/// Least-squares fit of a degree `deg` polynomial on `window`, returned in
/// the monomial basis of `n`.
///
/// The fit runs in the scaled variable `t = (n − centre)/half ∈ [−1, 1]` and
/// is converted back exactly by binomial expansion.
pub fn fit_polynomial(window: &Seq, deg: usize) -> Result<PolyCoeffs> {
    let cols = deg + 1;
    if window.len() < cols {
        return Err(Error::TooShort {
            what: "polynomial fit",
            len: window.len(),
            needed: cols,
        });
    }
    let centre = 0.5 * (window.start() + window.end()) as f64;
    let half = (0.5 * (window.end() - window.start()) as f64).max(1.0);
    let a = DMatrix::from_fn(window.len(), cols, |i, j| {
        let t = ((window.start() + i as i64) as f64 - centre) / half;
        t.powi(j as i32)
    });
    let b = DVector::from_column_slice(window.values());
    let beta = a
        .svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|e| Error::Consistency(format!("least-squares solve failed: {e}")))?;
    let mut coeffs = vec![0.0; cols];
    for (j, &bj) in beta.iter().enumerate() {
        let scale = bj / half.powi(j as i32);
        for (i, c) in coeffs.iter_mut().enumerate().take(j + 1) {
            *c += scale * binomial(j, i)? as f64 * (-centre).powi((j - i) as i32);
        }
    }
    Ok(PolyCoeffs::new(coeffs))
}

/// Splits `z` into a polynomial of degree `≤ m − 1` plus a remainder and
/// grades the remainder against `o(n^s)`.
///
/// Coefficients come from a least-squares fit on the trailing
/// `th.fit_fraction` of the window. Degrees below `⌈s⌉` are left in the
/// remainder; the degree equal to an integer `s` is kept.
pub fn extract_polynomial(z: &Seq, m: usize, s: f64, th: &Thresholds) -> Result<DecompositionReport> {
    if z.len() < MIN_EXTRACT_WINDOW {
        return Err(Error::TooShort {
            what: "polynomial extraction",
            len: z.len(),
            needed: MIN_EXTRACT_WINDOW,
        });
    }
    if m == 0 {
        return Err(Error::invalid("m", "must be at least 1"));
    }
    if !(s <= (m - 1) as f64) {
        return Err(Error::invalid("s", format!("{s} exceeds m - 1 = {}", m - 1)));
    }
    let window = z.trailing(th.fit_fraction);
    let fitted = fit_polynomial(&window, m - 1)?;
    if fitted.coeffs().iter().any(|c| !c.is_finite()) {
        return Err(Error::Divergence {
            index: window.start(),
            last_valid: window.start() - 1,
        });
    }
    let lowest = lowest_kept_degree(s);
    let psi = PolyCoeffs::new(
        fitted
            .coeffs()
            .iter()
            .enumerate()
            .map(|(j, &c)| if j < lowest { 0.0 } else { c })
            .collect(),
    );
    finish_report(z, m, s, psi, fitted, lowest, (window.start(), window.end()), th)
}

#[allow(clippy::too_many_arguments)]
pub(super) fn finish_report(
    z: &Seq,
    m: usize,
    s: f64,
    psi: PolyCoeffs,
    fitted: PolyCoeffs,
    lowest: usize,
    fit_window: (i64, i64),
    th: &Thresholds,
) -> Result<DecompositionReport> {
    let remainder = z.map(|n, v| v - psi.eval(n as f64))?;
    let resolution_floor = th.zero_floor.max(th.resolution_rel * z.max_abs());
    let floored = Thresholds {
        zero_floor: resolution_floor,
        ..th.clone()
    };
    let remainder_verdict = order_estimate(&remainder, s, &floored)?;
    Ok(DecompositionReport {
        m,
        s,
        psi,
        fitted,
        lowest_kept_degree: lowest,
        fit_window,
        remainder_max_abs: remainder.max_abs(),
        resolution_floor,
        remainder_verdict,
        decay_exponent_fit: decay_exponent_fit(&remainder),
        remainder,
        regularity: None,
    })
}

/// OLS of `ln|r_n|` on `ln n` over the trailing half, skipping tiny terms.
pub fn decay_exponent_fit(r: &Seq) -> Option<LineFit> {
    let points: Vec<(f64, f64)> = r
        .trailing(0.5)
        .iter()
        .filter(|&(n, v)| n > 0 && v.abs() >= DECAY_FIT_FLOOR)
        .map(|(n, v)| ((n as f64).ln(), v.abs().ln()))
        .collect();
    fit_line(&points)
}
