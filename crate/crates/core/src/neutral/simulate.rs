use serde::Serialize;

use super::EquationSpec;
use crate::error::{Error, Result};
use crate::seqcore::sum::CompensatedSum;
use crate::seqcore::{delta, Seq};

/// Magnitudes above this count as divergence.
pub const DIVERGENCE_LIMIT: f64 = 1e300;
/// Divisors at or below this magnitude make recovery of `x` singular.
pub const SINGULAR_LIMIT: f64 = 1e-9;
/// Relative tolerance for seed consistency and the post-run `z` check.
pub const SEED_TOLERANCE: f64 = 1e-9;

/// One step of index bookkeeping: at step `n`, `x_{σ(n)}` was read while
/// `x` was known up to `horizon`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CausalityEntry {
    pub n: i64,
    pub sigma: i64,
    pub horizon: i64,
}

/// A simulated solution.
///
/// `z` covers `[n₀, N]` and `x` covers `[n₀ + min(k, 0), N + max(k, 0)]`;
/// `u` is sampled on the window of `x`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolutionTrace {
    pub n0: i64,
    pub horizon: i64,
    pub x: Seq,
    pub z: Seq,
    pub u: Seq,
    pub causality_log: Vec<CausalityEntry>,
}

impl SolutionTrace {
    /// `Δ^m z` on `[n₀, N − m]`.
    pub fn delta_m_z(&self, m: usize) -> Result<Seq> {
        delta(&self.z, m)
    }

    /// `x_{σ(n)}` for the steps of the run.
    pub fn x_at_sigma(&self, spec: &EquationSpec) -> Result<Seq> {
        let first = self.causality_log.first().ok_or(Error::EmptyWindow)?;
        let values = self
            .causality_log
            .iter()
            .map(|e| self.x.get(e.sigma))
            .collect::<Result<Vec<_>>>()?;
        debug_assert_eq!(first.n, spec.start());
        Seq::new(first.n, values)
    }
}

/// `z` on `[n₀, n₀ + m − 1]` computed from an `x` seed.
pub fn derive_z_seed(spec: &EquationSpec, x_seed: &Seq) -> Result<Seq> {
    let (lo, hi) = spec.x_seed_range();
    if !(x_seed.contains(lo) && x_seed.contains(hi)) {
        return Err(Error::Seed(format!(
            "x seed [{}, {}] must cover [{lo}, {hi}]",
            x_seed.start(),
            x_seed.end()
        )));
    }
    let n0 = spec.start();
    Seq::from_fn(n0, n0 + spec.m as i64 - 1, |n| {
        x_seed.values()[(n - x_seed.start()) as usize]
            + spec.u.eval(n) * x_seed.values()[(n + spec.k - x_seed.start()) as usize]
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CausalityReport {
    pub steps_checked: i64,
    /// First step `(n, σ(n), lo, hi)` reading outside `[lo, hi]`.
    pub violation: Option<(i64, i64, i64, i64)>,
}

impl CausalityReport {
    pub fn is_ok(&self) -> bool {
        self.violation.is_none()
    }

    pub fn into_result(self) -> Result<()> {
        match self.violation {
            None => Ok(()),
            Some((n, sigma, lo, hi)) => Err(Error::Causality { n, sigma, lo, hi }),
        }
    }
}

fn readable_window(spec: &EquationSpec, x_start: i64, n: i64) -> (i64, i64) {
    let lo = x_start.max(1);
    let hi = n + spec.m as i64 - 1 + spec.k.max(0);
    (lo, hi)
}

/// Dry run of the index bookkeeping of [`simulate`] up to horizon `n_end`,
/// with `x` known from the start of the default seed range.
pub fn validate_causality(spec: &EquationSpec, n_end: i64) -> CausalityReport {
    scan_causality(spec, spec.x_start(), n_end)
}

/// As [`validate_causality`], with `x` known from `x_start` on.
pub fn scan_causality(spec: &EquationSpec, x_start: i64, n_end: i64) -> CausalityReport {
    let n0 = spec.start();
    let last = n_end - spec.m as i64;
    let mut steps = 0;
    for n in n0..=last {
        steps += 1;
        let sigma = spec.sigma.eval(n);
        let (lo, hi) = readable_window(spec, x_start, n);
        if sigma < lo || sigma > hi {
            return CausalityReport {
                steps_checked: steps,
                violation: Some((n, sigma, lo, hi)),
            };
        }
    }
    CausalityReport {
        steps_checked: steps,
        violation: None,
    }
}

fn relative_gap(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= SEED_TOLERANCE * (1.0 + scale)
}

/// Advances the equation from the seeds up to index `n_end` of `z`.
///
/// `x_seed` must cover [`EquationSpec::x_seed_range`]; it may start earlier
/// to supply history read by long delays. `z_seed` is optional; when given
/// it must agree with the value derived from `x_seed`. The step is carried in backward-difference form: with
/// `B_j = ∇^j z` at the current top index, the new top value of `∇^m z` is
/// the right-hand side and `B_j ← B_j + B_{j+1}` for `j = m−1, …, 0`, each
/// `B_j` held in a compensated accumulator. This is algebraically the
/// binomial recurrence `z_{n+m} = rhs − Σ_{i<m} (−1)^{m−i} C(m,i) z_{n+i}`
/// without its cancellation.
pub fn simulate(
    spec: &EquationSpec,
    x_seed: &Seq,
    z_seed: Option<&Seq>,
    n_end: i64,
) -> Result<SolutionTrace> {
    spec.validate()?;
    let m = spec.m;
    let k = spec.k;
    let n0 = spec.start();
    if n_end < n0 + m as i64 {
        return Err(Error::invalid(
            "horizon",
            format!("{n_end} leaves no step after the seed (need at least {})", n0 + m as i64),
        ));
    }
    let derived = derive_z_seed(spec, x_seed)?;
    if let Some(given) = z_seed {
        for (n, v) in derived.iter() {
            let g = given
                .at(n)
                .ok_or_else(|| Error::Seed(format!("z seed does not cover index {n}")))?;
            if !relative_gap(g, v, v.abs()) {
                return Err(Error::Seed(format!(
                    "z seed at {n} is {g}, but x seed gives {v}"
                )));
            }
        }
    }

    let (seed_lo, seed_hi) = spec.x_seed_range();
    if x_seed.end() != seed_hi {
        return Err(Error::Seed(format!(
            "x seed ends at {}, but the seed range ends at {seed_hi}",
            x_seed.end()
        )));
    }
    let x_start = x_seed.start().min(seed_lo);
    let x_end = n_end + k.max(0);
    let u = Seq::from_fn(x_start, x_end, |n| spec.u.eval(n))?;
    let uv = |n: i64| u.values()[(n - x_start) as usize];

    let mut x: Vec<f64> = x_seed.values().to_vec();
    let mut z: Vec<f64> = derived.values().to_vec();

    // B_j = ∇^j z at the top index n₀ + m − 1
    let mut acc: Vec<CompensatedSum> = (0..m)
        .map(|j| {
            let mut level = z.clone();
            for _ in 0..j {
                for i in (1..level.len()).rev() {
                    level[i] -= level[i - 1];
                }
            }
            CompensatedSum::with_value(level[m - 1])
        })
        .collect();

    let diverged = |index: i64| Error::Divergence {
        index,
        last_valid: index - 1,
    };
    let mut log = Vec::with_capacity((n_end - n0 - m as i64 + 1).max(0) as usize);
    for n in n0..=n_end - m as i64 {
        let sigma = spec.sigma.eval(n);
        let (lo, hi) = readable_window(spec, x_start, n);
        if sigma < lo || sigma > hi {
            return Err(Error::Causality { n, sigma, lo, hi });
        }
        log.push(CausalityEntry {
            n,
            sigma,
            horizon: hi,
        });
        let rhs = spec.rhs(n, x[(sigma - x_start) as usize]);
        let top = n + m as i64;
        if !rhs.is_finite() {
            return Err(diverged(top));
        }
        let mut carry = CompensatedSum::with_value(rhs);
        for level in acc.iter_mut().rev() {
            level.add_compensated(&carry);
            carry = *level;
        }
        let z_new = carry.value();
        if !z_new.is_finite() || z_new.abs() > super::DIVERGENCE_LIMIT {
            return Err(diverged(top));
        }
        z.push(z_new);

        let (index, value) = match k {
            0 => {
                let d = 1.0 + uv(top);
                if d.abs() <= SINGULAR_LIMIT {
                    return Err(Error::SingularRecovery {
                        index: top,
                        divisor: d,
                    });
                }
                (top, z_new / d)
            }
            k if k < 0 => (top, z_new - uv(top) * x[(top + k - x_start) as usize]),
            _ => {
                let d = uv(top);
                if d.abs() <= SINGULAR_LIMIT {
                    return Err(Error::SingularRecovery {
                        index: top,
                        divisor: d,
                    });
                }
                (top + k, (z_new - x[(top - x_start) as usize]) / d)
            }
        };
        if !value.is_finite() || value.abs() > DIVERGENCE_LIMIT {
            return Err(diverged(index));
        }
        x.push(value);
    }

    let x = Seq::new(x_start, x)?;
    let z = Seq::new(n0, z)?;
    for (n, zn) in z.iter() {
        let a = x.get(n)?;
        let b = uv(n) * x.get(n + k)?;
        if !relative_gap(zn, a + b, a.abs() + b.abs()) {
            return Err(Error::Consistency(format!(
                "z_{n} = {zn} differs from x_n + u_n x_(n+k) = {}",
                a + b
            )));
        }
    }
    Ok(SolutionTrace {
        n0,
        horizon: n_end,
        x,
        z,
        u,
        causality_log: log,
    })
}
