//! Finite-horizon stand-ins for `o(n^s)`, `O(n^s)` and summability.
//!
//! None of these can decide an asymptotic statement. They report what the
//! realized window shows against explicit thresholds carried in
//! [`Thresholds`], and every verdict records the numbers it was based on.

use serde::{Deserialize, Serialize};

use super::sum::CompensatedSum;
use super::Seq;
use crate::error::{Error, Result};

/// Tunable thresholds shared by all diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Thresholds {
    /// `o(n^s)` requires the trailing-third sup of `|x_n|/n^s` below this.
    pub tau_small: f64,
    /// A weighted series counts as convergent when its last quarter
    /// contributes less than `tau_tail·(1 + partial_sum)`.
    pub tau_tail: f64,
    /// `O(n^s)` allows the trailing sup to exceed the earlier running max by
    /// this relative amount.
    pub big_o_slack: f64,
    /// Absolute magnitudes at or below this are treated as exact zeros.
    pub zero_floor: f64,
    /// Remainders smaller than this fraction of the decomposed sequence's
    /// magnitude are below floating-point resolution and count as zero.
    pub resolution_rel: f64,
    /// Trailing fraction of the window used for polynomial fits.
    pub fit_fraction: f64,
    /// Relative slack for the `x∘σ = O(n^p)` growth comparison.
    pub growth_slack: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            tau_small: 0.05,
            tau_tail: 5e-3,
            big_o_slack: 0.01,
            zero_floor: 0.0,
            resolution_rel: 1e-12,
            fit_fraction: 0.5,
            growth_slack: 0.1,
        }
    }
}

impl Thresholds {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("tau_small", self.tau_small),
            ("tau_tail", self.tau_tail),
        ];
        for (field, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(format!("thresholds.{field}"), "must be positive"));
            }
        }
        let nonneg = [
            ("big_o_slack", self.big_o_slack),
            ("zero_floor", self.zero_floor),
            ("resolution_rel", self.resolution_rel),
            ("growth_slack", self.growth_slack),
        ];
        for (field, v) in nonneg {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::invalid(format!("thresholds.{field}"), "must be non-negative"));
            }
        }
        if !(self.fit_fraction > 0.0 && self.fit_fraction <= 1.0) {
            return Err(Error::invalid("thresholds.fit_fraction", "must lie in (0, 1]"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderKind {
    SmallO,
    BigO,
    Neither,
}

/// Outcome of [`order_estimate`].
///
/// The window (after dropping `n = 0` when `s ≠ 0`) is split into thirds.
/// `metric` is the sup of `|x_n|/n^s` on the trailing third, `mid_metric`
/// the sup on the middle third, and `bound` the running max before the
/// trailing third inflated by `big_o_slack`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderVerdict {
    pub kind: OrderKind,
    pub exponent: f64,
    pub metric: f64,
    pub mid_metric: f64,
    pub trend: f64,
    pub bound: f64,
    pub tau_small: f64,
    pub excluded_index_zero: bool,
}

impl OrderVerdict {
    pub fn is_small_o(&self) -> bool {
        self.kind == OrderKind::SmallO
    }

    /// `o(n^s) ⊂ O(n^s)`, so a small-o verdict also counts here.
    pub fn is_big_o(&self) -> bool {
        matches!(self.kind, OrderKind::SmallO | OrderKind::BigO)
    }
}

pub const MIN_ORDER_WINDOW: usize = 32;

/// Classifies `x` as `o(n^s)`, `O(n^s)` or neither on the realized window.
pub fn order_estimate(x: &Seq, s: f64, th: &Thresholds) -> Result<OrderVerdict> {
    let mut excluded_index_zero = false;
    let ratios: Vec<f64> = x
        .iter()
        .filter_map(|(n, v)| {
            if n == 0 && s != 0.0 {
                excluded_index_zero = true;
                return None;
            }
            let a = v.abs();
            let a = if a <= th.zero_floor { 0.0 } else { a };
            Some(if s == 0.0 { a } else { a / (n as f64).powf(s) })
        })
        .collect();
    if ratios.len() < MIN_ORDER_WINDOW {
        return Err(Error::TooShort {
            what: "order estimate",
            len: ratios.len(),
            needed: MIN_ORDER_WINDOW,
        });
    }
    let len = ratios.len();
    let (t1, t2) = (len / 3, 2 * len / 3);
    let sup = |r: &[f64]| r.iter().fold(0.0_f64, |m, &v| m.max(v));
    let metric = sup(&ratios[t2..]);
    let mid_metric = sup(&ratios[t1..t2]);
    let earlier = sup(&ratios[..t2]);
    let trend = if metric == 0.0 {
        0.0
    } else if mid_metric == 0.0 {
        f64::INFINITY
    } else {
        metric / mid_metric
    };
    let bound = (1.0 + th.big_o_slack) * earlier;
    let kind = if metric < th.tau_small && trend < 1.0 {
        OrderKind::SmallO
    } else if metric < bound {
        OrderKind::BigO
    } else {
        OrderKind::Neither
    };
    Ok(OrderVerdict {
        kind,
        exponent: s,
        metric,
        mid_metric,
        trend,
        bound,
        tau_small: th.tau_small,
        excluded_index_zero,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeightedSum {
    pub partial_sum: f64,
    pub tail_estimate: f64,
    pub converged: bool,
}

pub const MIN_SUM_WINDOW: usize = 16;

/// Partial sum of `n^w·|x_n|` and a tail-based convergence call.
///
/// `tail_estimate` is the contribution of the last quarter of the window.
pub fn weighted_sum_diagnostic(x: &Seq, w: f64, th: &Thresholds) -> Result<WeightedSum> {
    if x.len() < MIN_SUM_WINDOW {
        return Err(Error::TooShort {
            what: "weighted sum diagnostic",
            len: x.len(),
            needed: MIN_SUM_WINDOW,
        });
    }
    let tail_from = x.end() - (x.len() as i64 + 3) / 4 + 1;
    let mut total = CompensatedSum::new();
    let mut tail = CompensatedSum::new();
    for (n, v) in x.iter() {
        if n == 0 && w < 0.0 {
            continue;
        }
        let term = if w == 0.0 {
            v.abs()
        } else {
            (n as f64).powf(w) * v.abs()
        };
        total.add(term);
        if n >= tail_from {
            tail.add(term);
        }
    }
    let partial_sum = total.value();
    let tail_estimate = tail.value();
    Ok(WeightedSum {
        partial_sum,
        tail_estimate,
        converged: tail_estimate < th.tau_tail * (1.0 + partial_sum),
    })
}

/// Ordinary least-squares line `y ≈ intercept + slope·x`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points: usize,
}

impl LineFit {
    pub fn predict(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }
}

/// Returns `None` with fewer than two points or a degenerate abscissa.
pub fn fit_line(points: &[(f64, f64)]) -> Option<LineFit> {
    let k = points.len();
    if k < 2 {
        return None;
    }
    let kf = k as f64;
    let mean_x = points.iter().map(|p| p.0).collect::<CompensatedSum>().value() / kf;
    let mean_y = points.iter().map(|p| p.1).collect::<CompensatedSum>().value() / kf;
    let mut sxx = CompensatedSum::new();
    let mut sxy = CompensatedSum::new();
    let mut syy = CompensatedSum::new();
    for &(x, y) in points {
        let (dx, dy) = (x - mean_x, y - mean_y);
        sxx.add(dx * dx);
        sxy.add(dx * dy);
        syy.add(dy * dy);
    }
    let (sxx, sxy, syy) = (sxx.value(), sxy.value(), syy.value());
    if sxx <= 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    Some(LineFit {
        slope,
        intercept: mean_y - slope * mean_x,
        r_squared,
        points: k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th() -> Thresholds {
        Thresholds::default()
    }

    #[test]
    fn zeta_two_converges() {
        let x = Seq::from_fn(1, 10_000, |n| (n as f64).powi(-3)).unwrap();
        let d = weighted_sum_diagnostic(&x, 1.0, &th()).unwrap();
        assert!(d.converged);
        // Σ_{n≤10^4} n^{-2} = ζ(2) − 1/10^4 + O(10^{-8})
        let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((d.partial_sum - zeta2).abs() < 1e-3);
    }

    #[test]
    fn harmonic_series_does_not_converge() {
        let x = Seq::from_fn(1, 10_000, |n| 1.0 / n as f64).unwrap();
        let d = weighted_sum_diagnostic(&x, 0.0, &th()).unwrap();
        assert!(!d.converged);
        assert!((d.tail_estimate - (4.0f64 / 3.0).ln()).abs() < 1e-3);
    }

    #[test]
    fn zero_sequence_sums_to_zero() {
        let x = Seq::zeros(1, 64).unwrap();
        for w in [-2.0, 0.0, 3.0] {
            let d = weighted_sum_diagnostic(&x, w, &th()).unwrap();
            assert_eq!((d.partial_sum, d.tail_estimate, d.converged), (0.0, 0.0, true));
        }
    }

    #[test]
    fn order_examples() {
        let sqrt = Seq::from_fn(1, 10_000, |n| (n as f64).sqrt()).unwrap();
        assert_eq!(order_estimate(&sqrt, 1.0, &th()).unwrap().kind, OrderKind::SmallO);

        let lin = Seq::from_fn(1, 10_000, |n| n as f64).unwrap();
        let v = order_estimate(&lin, 1.0, &th()).unwrap();
        assert_eq!(v.kind, OrderKind::BigO);
        assert!(v.is_big_o() && !v.is_small_o());

        let nlogn = Seq::from_fn(1, 10_000, |n| n as f64 * (n as f64).ln()).unwrap();
        let v = order_estimate(&nlogn, 1.0, &th()).unwrap();
        assert_eq!(v.kind, OrderKind::Neither);
        assert!(v.metric > th().tau_small);
    }

    #[test]
    fn index_zero_excluded_for_negative_exponent() {
        let x = Seq::from_fn(0, 100, |n| 1.0 / (1.0 + n as f64).powi(3)).unwrap();
        let v = order_estimate(&x, -1.0, &th()).unwrap();
        assert!(v.excluded_index_zero);
        assert!(v.is_small_o());
        let v0 = order_estimate(&x, 0.0, &th()).unwrap();
        assert!(!v0.excluded_index_zero);
    }

    #[test]
    fn short_window_rejected() {
        let x = Seq::zeros(1, 31).unwrap();
        assert!(matches!(order_estimate(&x, 0.0, &th()), Err(Error::TooShort { .. })));
        let x = Seq::zeros(1, 15).unwrap();
        assert!(weighted_sum_diagnostic(&x, 0.0, &th()).is_err());
    }

    #[test]
    fn line_fit_recovers_exact_line() {
        let pts: Vec<_> = (0..10).map(|i| (i as f64, 2.0 - 0.5 * i as f64)).collect();
        let f = fit_line(&pts).unwrap();
        assert!((f.slope + 0.5).abs() < 1e-14);
        assert!((f.intercept - 2.0).abs() < 1e-13);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
        assert!(fit_line(&pts[..1]).is_none());
    }
}
