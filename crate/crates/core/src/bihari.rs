//! Discrete Bihari inequality.
//!
//! If `w_n ≤ λ + Σ_{k=p}^{n−1} a_k g(w_k)` with `g` nondecreasing and
//! `Σ a_k ≤ G(M) = ∫_λ^M dt/g(t)`, then `w_n ≤ M`. This module computes the
//! least such `M`, the extremal sequence attaining equality in the
//! hypothesis, and the growth constant for `|x_n| ≤ n^{m−1}(L + Σ|Δ^m x_i|)`.

use serde::Serialize;

use crate::catalog::{Majorant, MajorantSpec};
use crate::error::{Error, Result};
use crate::quadrature::adaptive_simpson;
use crate::seqcore::sum::CompensatedSum;
use crate::seqcore::{delta, Seq};

/// Absolute tolerance of the numeric `∫ dt/g`.
pub const QUAD_TOL: f64 = 1e-10;
/// Doubling stops here; `G` still below `Σa` means the condition fails.
pub const DOUBLING_LIMIT: f64 = 1e15;
/// `G` growing by less than this over one doubling counts as a plateau.
pub const PLATEAU: f64 = 1e-14;
/// Floor that keeps the growth constant positive.
pub const BHL2_EPS: f64 = 1e-12;

fn check_positive<G: Majorant + ?Sized>(g: &G, t: f64) -> Result<()> {
    let v = g.eval(t);
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { t, value: v })
    }
}

/// `∫_λ^t ds/g(s)` by adaptive Simpson over doubling segments, ignoring any
/// closed form.
pub fn integrate_recip_g_numeric<G: Majorant + ?Sized>(
    g: &G,
    lambda: f64,
    t: f64,
) -> Result<(f64, f64)> {
    if !(t >= lambda) {
        return Err(Error::invalid("t", format!("{t} is below lambda = {lambda}")));
    }
    check_positive(g, lambda)?;
    let f = |s: f64| 1.0 / g.eval(s);
    let mut breaks = vec![lambda];
    let mut next = lambda.max(0.5) * 2.0;
    while next < t {
        breaks.push(next);
        next *= 2.0;
    }
    breaks.push(t);
    let tol = QUAD_TOL / (breaks.len() - 1).max(1) as f64;
    let mut value = CompensatedSum::new();
    let mut error = 0.0;
    for w in breaks.windows(2) {
        let q = adaptive_simpson(&f, w[0], w[1], tol).map_err(|e| match e {
            Error::Domain { t, .. } => Error::Domain { t, value: g.eval(t) },
            other => other,
        })?;
        value.add(q.value);
        error += q.error;
    }
    Ok((value.value(), error))
}

/// `∫_λ^t ds/g(s)`, in closed form when `g` provides one.
pub fn integrate_recip_g<G: Majorant + ?Sized>(g: &G, lambda: f64, t: f64) -> Result<f64> {
    integrate_with_error(g, lambda, t).map(|(v, _)| v)
}

fn integrate_with_error<G: Majorant + ?Sized>(g: &G, lambda: f64, t: f64) -> Result<(f64, f64)> {
    if !(t >= lambda) {
        return Err(Error::invalid("t", format!("{t} is below lambda = {lambda}")));
    }
    check_positive(g, lambda)?;
    match g.recip_integral(lambda, t) {
        Some(v) => {
            if t.is_finite() {
                check_positive(g, t)?;
            }
            Ok((v, 0.0))
        }
        None => integrate_recip_g_numeric(g, lambda, t),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BihariProblem {
    pub g: MajorantSpec,
    pub lambda: f64,
    pub total_a: f64,
    pub p: i64,
}

impl BihariProblem {
    pub fn solve(&self) -> Result<BihariBound> {
        bihari_bound(&self.g, self.lambda, self.total_a)
    }
}

/// Result of [`bihari_bound`]. `m` is `None` when `∫_λ^∞ dt/g < Σa`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BihariBound {
    pub m: Option<f64>,
    pub g_at_m: f64,
    pub quadrature_error: f64,
}

impl BihariBound {
    pub fn condition_violated(&self) -> bool {
        self.m.is_none()
    }
}

/// The least `M ≥ λ` with `G(M) ≥ total_a`.
pub fn bihari_bound<G: Majorant + ?Sized>(g: &G, lambda: f64, total_a: f64) -> Result<BihariBound> {
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::invalid("lambda", format!("{lambda} must be finite and non-negative")));
    }
    if !(total_a.is_finite() && total_a >= 0.0) {
        return Err(Error::invalid("total_a", format!("{total_a} must be finite and non-negative")));
    }
    check_positive(g, lambda)?;
    if total_a == 0.0 {
        return Ok(BihariBound {
            m: Some(lambda),
            g_at_m: 0.0,
            quadrature_error: 0.0,
        });
    }
    if g.recip_integral_diverges() == Some(false) {
        if let Some(total) = g.recip_integral(lambda, f64::INFINITY) {
            if total < total_a {
                return Ok(BihariBound {
                    m: None,
                    g_at_m: total,
                    quadrature_error: 0.0,
                });
            }
        }
    }

    // G(lo) < total_a ≤ G(hi)
    let (mut lo, mut g_lo, mut err_lo) = (lambda, 0.0, 0.0);
    let mut hi = (2.0 * lambda).max(lambda + 1.0);
    let (mut g_hi, mut err_hi);
    loop {
        let (inc, e) = integrate_with_error(g, lo, hi)?;
        g_hi = g_lo + inc;
        err_hi = err_lo + e;
        if g_hi >= total_a {
            break;
        }
        if hi >= DOUBLING_LIMIT || inc < PLATEAU {
            return Ok(BihariBound {
                m: None,
                g_at_m: g_hi,
                quadrature_error: err_hi,
            });
        }
        (lo, g_lo, err_lo) = (hi, g_hi, err_hi);
        hi *= 2.0;
    }
    for _ in 0..64 {
        if hi - lo < 1e-12 * (1.0 + hi) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let (inc, e) = integrate_with_error(g, lo, mid)?;
        let g_mid = g_lo + inc;
        if g_mid >= total_a {
            (hi, g_hi, err_hi) = (mid, g_mid, err_lo + e);
        } else {
            (lo, g_lo, err_lo) = (mid, g_mid, err_lo + e);
        }
    }
    Ok(BihariBound {
        m: Some(hi),
        g_at_m: g_hi,
        quadrature_error: err_hi,
    })
}

/// The extremal sequence `w_p = λ`, `w_{n+1} = λ + Σ_{k=p}^{n} a_k g(w_k)`
/// on `[p, n_end]`.
pub fn worst_case_w<G: Majorant + ?Sized>(
    a: &Seq,
    g: &G,
    lambda: f64,
    p: i64,
    n_end: i64,
) -> Result<Seq> {
    if n_end < p {
        return Err(Error::EmptyWindow);
    }
    let mut w = Vec::with_capacity((n_end - p + 1) as usize);
    w.push(lambda);
    let mut acc = CompensatedSum::with_value(lambda);
    for n in p..n_end {
        let ak = a.get(n)?;
        if ak < 0.0 {
            return Err(Error::invalid("a", format!("a_{n} = {ak} is negative")));
        }
        acc.add(ak * g.eval(w[(n - p) as usize]));
        w.push(acc.value());
    }
    Seq::new(p, w)
}

/// Least `L ≥ ε` with `|x_n| ≤ n^{m−1}(L + Σ_{i=n₀}^{n−1} |Δ^m x_i|)` for
/// every `n ∈ [n₀, end − m + 1]`.
pub fn bhl2_constant(x: &Seq, m: usize, n0: i64) -> Result<f64> {
    let d = delta(x, m)?;
    if n0 < x.start() || n0 < 1 {
        return Err(Error::invalid(
            "n0",
            format!("{n0} must be at least max(1, start = {})", x.start()),
        ));
    }
    let last = x.end() - m as i64 + 1;
    if last < n0 {
        return Err(Error::TooShort {
            what: "growth constant window",
            len: x.len(),
            needed: (n0 - x.start()) as usize + m,
        });
    }
    let mut best = BHL2_EPS;
    let mut acc = CompensatedSum::new();
    for n in n0..=last {
        let gap = x.get(n)?.abs() / (n as f64).powi(m as i32 - 1) - acc.value();
        best = best.max(gap);
        if n < last {
            acc.add(d.get(n)?.abs());
        }
    }
    Ok(best)
}
