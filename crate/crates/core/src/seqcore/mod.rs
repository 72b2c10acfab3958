//! Sequence windows, finite differences, polynomial sequences and the
//! finite-horizon order diagnostics used by every other module.

mod diagnostics;
mod difference;
mod oscillation;
mod poly;
mod seq;
pub mod sum;

pub use diagnostics::{
    fit_line, order_estimate, weighted_sum_diagnostic, LineFit, OrderKind, OrderVerdict,
    Thresholds, WeightedSum, MIN_ORDER_WINDOW, MIN_SUM_WINDOW,
};
pub use difference::{
    binomial, binomial_row, delta, factorial, normalized_difference_ratios, MAX_ORDER,
};
pub use oscillation::{classify_oscillation, OscillationClass};
pub use poly::{poly_eval, PolyCoeffs};
pub use seq::Seq;
