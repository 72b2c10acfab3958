//! Hypothesis checks for the asymptotically-polynomial theorems.
//!
//! The first theorem: with `Σ n^{m−1−s}|a_n| < ∞`, `Σ n^{m−1−s}|b_n| < ∞`,
//! `u_n = c + o(n^{s+1−m})` and one of the cases (a), (b), (c), every
//! solution satisfies `x ∈ Pol(m−1) + o(n^s)`. The regular refinement adds
//! `s = q` integer and `u_n = c + o(n^{1−m})` and concludes
//! `x ∈ Pol(m−1) + Δ^{−q}o(1)`.

use serde::{Deserialize, Serialize};

use crate::bihari::{integrate_recip_g, DOUBLING_LIMIT, PLATEAU};
use crate::catalog::{Majorant, MajorantSpec};
use crate::decomp::{decompose_solution, SolutionDecomposition};
use crate::error::{Error, Result};
use crate::neutral::{EquationSpec, SolutionTrace};
use crate::seqcore::{
    classify_oscillation, fit_line, order_estimate, weighted_sum_diagnostic, OrderVerdict, Seq,
    Thresholds,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    A,
    B,
    C,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Plain,
    Regular,
}

/// Sample grid for [`check_g_p_bounded`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundGrid {
    /// `n` runs over log-spaced integers in `[1, n_max]`.
    pub n_max: i64,
    pub n_points: usize,
    /// `|t|` runs over log-spaced values in `[t_min, t_max]`, both signs, plus 0.
    pub t_min: f64,
    pub t_max: f64,
    pub t_points: usize,
}

impl Default for BoundGrid {
    fn default() -> Self {
        Self {
            n_max: 10_000,
            n_points: 60,
            t_min: 1e-6,
            t_max: 1e6,
            t_points: 121,
        }
    }
}

impl BoundGrid {
    fn ns(&self) -> Vec<i64> {
        let mut out: Vec<i64> = log_space(1.0, self.n_max as f64, self.n_points)
            .into_iter()
            .map(|v| v.round() as i64)
            .collect();
        out.dedup();
        out
    }

    fn ts(&self) -> Vec<f64> {
        let pos = log_space(self.t_min, self.t_max, self.t_points);
        let mut out: Vec<f64> = pos.iter().rev().map(|t| -t).collect();
        out.push(0.0);
        out.extend(pos);
        out
    }
}

fn log_space(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points < 2 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub pass: bool,
    /// Max of `|f(n,t)| / g(|t|/n^p)` over the grid.
    pub worst_ratio: f64,
    pub worst_n: i64,
    pub worst_t: f64,
}

/// Grid check of `|f(n,t)| ≤ g(|t|/n^p)`.
pub fn check_g_p_bounded<F, G>(f: F, g: &G, p: f64, grid: &BoundGrid) -> BoundCheck
where
    F: Fn(i64, f64) -> f64,
    G: Majorant + ?Sized,
{
    let mut out = BoundCheck {
        pass: true,
        worst_ratio: 0.0,
        worst_n: 1,
        worst_t: 0.0,
    };
    let ts = grid.ts();
    for n in grid.ns() {
        let scale = (n as f64).powf(p);
        for &t in &ts {
            let lhs = f(n, t).abs();
            let rhs = g.eval(t.abs() / scale);
            let ratio = if lhs == 0.0 {
                0.0
            } else if rhs > 0.0 {
                lhs / rhs
            } else {
                f64::INFINITY
            };
            if ratio > out.worst_ratio {
                out.worst_ratio = ratio;
                out.worst_n = n;
                out.worst_t = t;
            }
            if lhs > rhs * (1.0 + 1e-12) {
                out.pass = false;
            }
        }
    }
    out
}

/// `u − c ∈ o(n^e)`.
pub fn check_u_rate(u: &Seq, c: f64, e: f64, th: &Thresholds) -> Result<OrderVerdict> {
    order_estimate(&u.map(|_, v| v - c)?, e, th)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GrowthCheck {
    pub pass: bool,
    pub exponent: f64,
    pub max_residual: f64,
    pub allowed_residual: f64,
}

pub const MIN_GROWTH_WINDOW: usize = 64;

/// Polynomial-growth test: fits `ln(1 + sup_{j≤n}|x_j|)` against `ln n` on
/// the trailing half and passes when the residuals stay below half of the
/// `ln n` range covered by the fit. The running sup keeps zeros of an
/// oscillating solution from masquerading as decay.
pub fn polynomial_growth_check(x: &Seq) -> Result<GrowthCheck> {
    if x.len() < MIN_GROWTH_WINDOW {
        return Err(Error::TooShort {
            what: "polynomial growth check",
            len: x.len(),
            needed: MIN_GROWTH_WINDOW,
        });
    }
    let mut sup = 0.0_f64;
    let envelope = x.map(|_, v| {
        sup = sup.max(v.abs());
        sup.ln_1p()
    })?;
    let tail = envelope.trailing(0.5);
    let first = tail.start().max(1);
    let points: Vec<(f64, f64)> = tail
        .iter()
        .filter(|&(n, _)| n >= first)
        .map(|(n, y)| ((n as f64).ln(), y))
        .collect();
    let fit = fit_line(&points).ok_or(Error::TooShort {
        what: "polynomial growth fit",
        len: points.len(),
        needed: 2,
    })?;
    let max_residual = points
        .iter()
        .map(|&(lx, y)| (y - fit.predict(lx)).abs())
        .fold(0.0, f64::max);
    let allowed_residual = 0.5 * ((tail.end() as f64).ln() - (first as f64).ln());
    Ok(GrowthCheck {
        pass: max_residual < allowed_residual,
        exponent: fit.slope,
        max_residual,
        allowed_residual,
    })
}

/// Whether `∫_1^∞ dt/g(t)` diverges: exact for catalog entries, otherwise by
/// doubling until `G` plateaus or passes `t = 1e15`.
pub fn recip_g_diverges<G: Majorant + ?Sized>(g: &G) -> Result<bool> {
    if let Some(d) = g.recip_integral_diverges() {
        return Ok(d);
    }
    let mut t = 1.0;
    while t < DOUBLING_LIMIT {
        if integrate_recip_g(g, t, 2.0 * t)? < PLATEAU {
            return Ok(false);
        }
        t *= 2.0;
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub metric: f64,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, metric: f64, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            pass,
            metric,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HypothesisVerdict {
    pub case: Case,
    pub mode: Mode,
    pub checks: Vec<Check>,
    pub conclusion: Vec<Check>,
    pub overall_pass: bool,
    /// Name of the first failing hypothesis or conclusion check.
    pub first_failure: Option<String>,
    #[serde(skip)]
    pub decomposition: SolutionDecomposition,
}

impl HypothesisVerdict {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().chain(&self.conclusion).find(|c| c.name == name)
    }
}

fn summability(name: &str, seq: &Seq, w: f64, th: &Thresholds) -> Result<Check> {
    let d = weighted_sum_diagnostic(seq, w, th)?;
    Ok(Check::new(
        name,
        d.converged,
        d.tail_estimate,
        format!(
            "sum n^{w}|.| = {:e}, last-quarter share {:e}",
            d.partial_sum, d.tail_estimate
        ),
    ))
}

fn u_rate(name: &str, u: &Seq, c: f64, e: f64, th: &Thresholds) -> Result<Check> {
    let v = check_u_rate(u, c, e, th)?;
    Ok(Check::new(
        name,
        v.is_small_o(),
        v.metric,
        format!("u_n - c vs n^{e}: {:?}, trend {:.4}", v.kind, v.trend),
    ))
}

fn bounded_check(name: &str, b: BoundCheck, what: String) -> Check {
    Check::new(
        name,
        b.pass,
        b.worst_ratio,
        format!("{what}; worst |f|/g = {:.6} at n={}, t={:e}", b.worst_ratio, b.worst_n, b.worst_t),
    )
}

/// Sup of `|x_{σ(n)}|/n^p` on the trailing half of the steps against
/// `(1 + growth_slack)` times its sup on the preceding quarter.
fn x_sigma_growth(spec: &EquationSpec, trace: &SolutionTrace, p: f64, th: &Thresholds) -> Result<Check> {
    let xs = trace.x_at_sigma(spec)?;
    let ratios: Vec<f64> = xs.iter().map(|(n, v)| v.abs() / (n as f64).powf(p)).collect();
    let len = ratios.len();
    if len < 8 {
        return Err(Error::TooShort {
            what: "x∘σ growth check",
            len,
            needed: 8,
        });
    }
    let half = len - len / 2;
    let quarter = len / 4;
    let sup = |r: &[f64]| r.iter().fold(0.0_f64, |m, &v| m.max(v));
    let tail = sup(&ratios[half..]);
    let before = sup(&ratios[half - quarter..half]);
    let limit = (1.0 + th.growth_slack) * before.max(th.zero_floor);
    let pass = tail <= limit || tail <= th.zero_floor;
    Ok(Check::new(
        "x-sigma-O(n^p)",
        pass,
        tail,
        format!("trailing sup |x_sigma(n)|/n^{p} = {tail:e}, earlier sup {before:e}"),
    ))
}

fn alternative(spec: &EquationSpec, trace: &SolutionTrace) -> Result<Check> {
    let sign_rule = spec.k as f64 * (spec.c.abs() - 1.0) >= 0.0;
    let growth = polynomial_growth_check(&trace.x)?;
    let osc = classify_oscillation(&trace.x, &trace.u, spec.k)?;
    let mut held = Vec::new();
    if sign_rule {
        held.push("k(|c|-1) >= 0");
    }
    if growth.pass {
        held.push("polynomial growth");
    }
    if osc.uk_nonoscillatory {
        held.push("(u,k)-nonoscillatory");
    }
    let detail = if held.is_empty() {
        format!("no branch holds (growth exponent {:.3})", growth.exponent)
    } else {
        format!("holds: {}; growth exponent {:.3}", held.join(", "), growth.exponent)
    };
    Ok(Check::new("alternative", !held.is_empty(), growth.exponent, detail))
}

/// Runs every check of the selected case on a simulated trace, then the
/// conclusion checks on its decomposition.
pub fn theorem_dispatch(
    spec: &EquationSpec,
    trace: &SolutionTrace,
    case: Case,
    mode: Mode,
    th: &Thresholds,
) -> Result<HypothesisVerdict> {
    let m = spec.m;
    let mf = m as f64;
    if mode == Mode::Regular {
        let q = spec.q.ok_or_else(|| Error::Config("regular mode needs `spec.q`".into()))?;
        if spec.s != q as f64 {
            return Err(Error::Config(format!(
                "regular mode needs s = q; got s = {}, q = {q}",
                spec.s
            )));
        }
    }
    let n_end = trace.horizon;
    let a = spec.a.sample(1, n_end)?;
    let b = spec.b.sample(1, n_end)?;
    let u = spec.u.sample(1, n_end)?;
    let weight = mf - 1.0 - spec.s;

    let mut checks = vec![
        summability("a-summability", &a, weight, th)?,
        summability("b-summability", &b, weight, th)?,
        u_rate("u-rate", &u, spec.c, spec.s + 1.0 - mf, th)?,
    ];
    if mode == Mode::Regular {
        checks.push(u_rate("u-rate-regular", &u, spec.c, 1.0 - mf, th)?);
    }
    let grid = BoundGrid::default();
    let f = |n: i64, t: f64| spec.f.eval(n, t);
    match case {
        Case::A => {
            checks.push(Check::new("g-nondecreasing", true, 0.0, "guaranteed by the catalog"));
            let b = check_g_p_bounded(f, &spec.g, mf - 1.0, &grid);
            checks.push(bounded_check("f-(g,m-1)-bounded", b, format!("p = {}", m - 1)));
            let steps = &trace.causality_log;
            let late = &steps[steps.len() / 2..];
            let worst = late.iter().map(|e| e.sigma - e.n).max().unwrap_or(0);
            checks.push(Check::new(
                "sigma-le-n",
                worst <= 0,
                worst as f64,
                format!("max sigma(n) - n over the trailing half of steps = {worst}"),
            ));
            let diverges = recip_g_diverges(&spec.g)?;
            checks.push(Check::new(
                "recip-g-divergent",
                diverges,
                if diverges { f64::INFINITY } else { 0.0 },
                "integral of 1/g over [1, inf)",
            ));
            let osc = classify_oscillation(&trace.x, &trace.u, spec.k)?;
            checks.push(Check::new(
                "uk-nonoscillatory",
                osc.uk_nonoscillatory,
                0.0,
                format!("labels: {}", osc.labels().join(", ")),
            ));
        }
        Case::B => {
            checks.push(Check::new("g-locally-bounded", true, 0.0, "guaranteed by the catalog"));
            let p = spec.p.unwrap_or(mf - 1.0);
            let b = check_g_p_bounded(f, &spec.g, p, &grid);
            checks.push(bounded_check("f-(g,p)-bounded", b, format!("p = {p}")));
            checks.push(x_sigma_growth(spec, trace, p, th)?);
            checks.push(alternative(spec, trace)?);
        }
        Case::C => {
            let check = match spec.f.sup_abs() {
                Some(sup) => {
                    let g = MajorantSpec::Constant { value: sup };
                    let b = check_g_p_bounded(f, &g, 0.0, &grid);
                    bounded_check("f-bounded", b, format!("sup |f| = {sup}"))
                }
                None => Check::new("f-bounded", false, f64::INFINITY, "f is unbounded"),
            };
            checks.push(check);
            checks.push(alternative(spec, trace)?);
        }
    }

    let decomposition = decompose_solution(trace, spec, th)?;
    let v = &decomposition.x.remainder_verdict;
    let mut conclusion = vec![Check::new(
        "conclusion",
        v.is_small_o(),
        v.metric,
        format!(
            "x - psi vs n^{}: {:?}, trailing sup {:e}, trend {:.4}",
            spec.s, v.kind, v.metric, v.trend
        ),
    )];
    if mode == Mode::Regular {
        let r = decomposition.x.regularity.as_ref().ok_or_else(|| {
            Error::Consistency("regular mode produced no regularity report".into())
        })?;
        let worst = r.per_p.iter().map(|v| v.metric).fold(0.0, f64::max);
        let detail = match r.first_failure {
            Some(p) => format!("delta^{p} of the remainder is not o(n^{})", r.q - p),
            None => format!("delta^p remainder small-o at q - p for p = 0..={}", r.q),
        };
        conclusion.push(Check::new("conclusion-regular", r.pass, worst, detail));
    }
    let first_failure = checks
        .iter()
        .chain(&conclusion)
        .find(|c| !c.pass)
        .map(|c| c.name.clone());
    Ok(HypothesisVerdict {
        case,
        mode,
        overall_pass: first_failure.is_none(),
        first_failure,
        checks,
        conclusion,
        decomposition,
    })
}
