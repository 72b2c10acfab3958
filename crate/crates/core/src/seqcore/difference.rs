//! Forward differences and binomial coefficients.

use super::Seq;
use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 20;

/// Row `m` of Pascal's triangle, built by the additive recurrence in exact
/// integer arithmetic.
pub fn binomial_row(m: usize) -> Result<Vec<u64>> {
    if m > MAX_ORDER {
        return Err(Error::OrderTooLarge(m));
    }
    let mut row = vec![1u64];
    for _ in 0..m {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(1);
        next.extend(row.windows(2).map(|w| w[0] + w[1]));
        next.push(1);
        row = next;
    }
    Ok(row)
}

pub fn binomial(m: usize, i: usize) -> Result<u64> {
    if i > m {
        return Ok(0);
    }
    Ok(binomial_row(m)?[i])
}

/// `m!` as a float; exact for the supported orders.
pub fn factorial(m: usize) -> f64 {
    (1..=m).fold(1.0, |acc, i| acc * i as f64)
}

/// `(Δ^m x)_n` on the window, computed as `m` successive first differences.
///
/// The start index is kept and the window shrinks by `m`. Iterating first
/// differences avoids the large alternating binomial weights of the expanded
/// form and makes `delta(delta(x, 1), m - 1)` bit-identical to `delta(x, m)`.
pub fn delta(x: &Seq, m: usize) -> Result<Seq> {
    if m > MAX_ORDER {
        return Err(Error::OrderTooLarge(m));
    }
    if x.len() <= m {
        return Err(Error::TooShort {
            what: "difference of this order",
            len: x.len(),
            needed: m + 1,
        });
    }
    let mut values = x.values().to_vec();
    for _ in 0..m {
        for i in 0..values.len() - 1 {
            values[i] = values[i + 1] - values[i];
        }
        values.pop();
    }
    Seq::new(x.start(), values)
}

/// The quantities `p!·Δ^{m-p}z_n / n^p` for `p = 0..=m`, evaluated at the
/// last index where `Δ^m z` is available.
///
/// If `Δ^m z_n → λ` then every entry tends to `λ` (Stolz–Cesàro).
pub fn normalized_difference_ratios(z: &Seq, m: usize) -> Result<Vec<f64>> {
    let top = delta(z, m)?;
    let n = top.end();
    if n <= 0 {
        return Err(Error::invalid("window", "ratios need a positive end index"));
    }
    (0..=m)
        .map(|p| {
            let d = delta(z, m - p)?;
            Ok(factorial(p) * d.get(n)? / (n as f64).powi(p as i32))
        })
        .collect()
}
