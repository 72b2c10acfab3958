#![allow(dead_code)]

use neutral_asymp::config::ExperimentConfig;
use neutral_asymp::fixtures::fixture;
use neutral_asymp::hypotheses::{theorem_dispatch, HypothesisVerdict};
use neutral_asymp::neutral::{simulate, SolutionTrace};

pub fn config(name: &str) -> ExperimentConfig {
    let f = fixture(name).unwrap_or_else(|| panic!("no fixture {name}"));
    ExperimentConfig::from_json(f.json).unwrap()
}

pub fn run(cfg: &ExperimentConfig) -> neutral_asymp::Result<(SolutionTrace, HypothesisVerdict)> {
    let x = cfg.x_seed()?;
    let z = cfg.z_seed()?;
    let trace = simulate(&cfg.spec, &x, z.as_ref(), cfg.horizon)?;
    let verdict = theorem_dispatch(&cfg.spec, &trace, cfg.case, cfg.mode, &cfg.thresholds)?;
    Ok((trace, verdict))
}

/// `Δ^m z = d` integrated `m` times from zero initial values on `[1, end]`.
pub fn integrate_m(d: impl Fn(i64) -> f64, m: usize, end: i64) -> Vec<f64> {
    let len = end as usize;
    let mut cur: Vec<f64> = (1..=end).map(&d).collect();
    for _ in 0..m {
        let mut next = vec![0.0; len];
        for i in 1..len {
            next[i] = next[i - 1] + cur[i - 1];
        }
        cur = next;
    }
    cur
}
