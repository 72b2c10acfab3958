//! Equation instances, the associated sequence `z`, and the simulator.

mod associated;
mod simulate;

use serde::{Deserialize, Serialize};

use crate::catalog::{DelaySpec, MajorantSpec, RhsSpec, SeqGen};
use crate::error::{Error, Result};
use crate::seqcore::MAX_ORDER;

pub use associated::{x_from_z, z_from_x};
pub use simulate::{
    derive_z_seed, scan_causality, simulate, validate_causality, CausalityEntry, CausalityReport,
    SolutionTrace, DIVERGENCE_LIMIT, SEED_TOLERANCE, SINGULAR_LIMIT,
};

/// `||c| − 1|` must exceed this.
pub const C_MARGIN: f64 = 1e-6;

/// One instance of the neutral equation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquationSpec {
    /// Difference order, `m ≥ 1`.
    pub m: usize,
    /// Neutral shift.
    pub k: i64,
    /// Limit of `u_n`.
    pub c: f64,
    pub u: SeqGen,
    pub a: SeqGen,
    pub b: SeqGen,
    pub f: RhsSpec,
    pub g: MajorantSpec,
    pub sigma: DelaySpec,
    /// Target smallness exponent, `s ≤ m − 1`.
    pub s: f64,
    /// Regularity order for the `Δ^{-q}o(1)` refinement.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    /// Exponent `p` of the `(g, p)`-boundedness in case (b).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    /// First step of the simulation; defaults to `max(1, 1 − k, m)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<i64>,
}

impl EquationSpec {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::invalid("m", "difference order must be at least 1"));
        }
        if self.m > MAX_ORDER {
            return Err(Error::OrderTooLarge(self.m));
        }
        if !self.c.is_finite() {
            return Err(Error::invalid("c", "must be finite"));
        }
        if (self.c.abs() - 1.0).abs() <= C_MARGIN {
            return Err(Error::IllConditioned { c: self.c });
        }
        self.u.validate("u")?;
        self.a.validate("a")?;
        self.b.validate("b")?;
        self.f.validate()?;
        self.g.validate()?;
        match self.u.limit() {
            Some(l) if (l - self.c).abs() <= 1e-12 * (1.0 + self.c.abs()) => {}
            Some(l) => {
                return Err(Error::invalid(
                    "u",
                    format!("generator tends to {l}, but c = {}", self.c),
                ))
            }
            None => return Err(Error::invalid("u", "generator has no finite limit")),
        }
        if !self.s.is_finite() || self.s > (self.m - 1) as f64 {
            return Err(Error::invalid(
                "s",
                format!("{} must be finite and at most m - 1 = {}", self.s, self.m - 1),
            ));
        }
        if let Some(q) = self.q {
            if q > self.m - 1 {
                return Err(Error::invalid("q", format!("{q} exceeds m - 1 = {}", self.m - 1)));
            }
        }
        if let Some(p) = self.p {
            if !p.is_finite() {
                return Err(Error::invalid("p", "must be finite"));
            }
        }
        if let Some(start) = self.start {
            if start < self.default_start() {
                return Err(Error::invalid(
                    "start",
                    format!("{start} is below the minimum {}", self.default_start()),
                ));
            }
        }
        Ok(())
    }

    pub fn default_start(&self) -> i64 {
        1.max(1 - self.k).max(self.m as i64)
    }

    /// The first index `n₀` at which the equation is imposed.
    pub fn start(&self) -> i64 {
        self.start.unwrap_or_else(|| self.default_start())
    }

    /// First index of `x` that the simulation reads or writes.
    pub fn x_start(&self) -> i64 {
        self.start() + self.k.min(0)
    }

    /// Index range `[lo, hi]` the `x` seed must cover.
    pub fn x_seed_range(&self) -> (i64, i64) {
        let n0 = self.start();
        (n0 + self.k.min(0), n0 + self.m as i64 - 1 + self.k.max(0))
    }

    /// `a_n·f(n, t) + b_n`.
    pub fn rhs(&self, n: i64, t: f64) -> f64 {
        self.a.eval(n) * self.f.eval(n, t) + self.b.eval(n)
    }
}
