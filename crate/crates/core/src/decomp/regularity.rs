use serde::Serialize;

use crate::error::{Error, Result};
use crate::seqcore::{delta, order_estimate, OrderVerdict, Seq, Thresholds, MIN_ORDER_WINDOW};

/// Per-`p` verdicts for `Δ^p w ∈ o(n^{q−p})`, `p = 0, …, q`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegularityReport {
    pub q: usize,
    pub per_p: Vec<OrderVerdict>,
    pub pass: bool,
    /// First `p` whose verdict is not small-o.
    pub first_failure: Option<usize>,
}

/// Certifies `w ∈ Δ^{-q}o(1)` on the window by checking every
/// `Δ^p w ∈ o(n^{q−p})`.
///
/// `th.zero_floor` applies to `w`; for `Δ^p w` it is scaled by `2^p`, the
/// largest amplification of a floor-sized perturbation by `p` differences.
pub fn regularity_check(w: &Seq, q: usize, th: &Thresholds) -> Result<RegularityReport> {
    let needed = 2 * MIN_ORDER_WINDOW + q;
    if w.len() < needed {
        return Err(Error::TooShort {
            what: "regularity check",
            len: w.len(),
            needed,
        });
    }
    let mut per_p = Vec::with_capacity(q + 1);
    for p in 0..=q {
        let th_p = Thresholds {
            zero_floor: th.zero_floor * 2f64.powi(p as i32),
            ..th.clone()
        };
        per_p.push(order_estimate(&delta(w, p)?, (q - p) as f64, &th_p)?);
    }
    let first_failure = per_p.iter().position(|v| !v.is_small_o());
    Ok(RegularityReport {
        q,
        per_p,
        pass: first_failure.is_none(),
        first_failure,
    })
}
