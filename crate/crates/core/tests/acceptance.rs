//! One line per acceptance criterion, with its runtime. Exits non-zero if
//! any criterion fails.

mod common;

use std::time::{Duration, Instant};

use neutral_asymp::bihari::{bihari_bound, worst_case_w};
use neutral_asymp::catalog::{DelaySpec, MajorantSpec, RhsSpec, SeqGen};
use neutral_asymp::decomp::{regularity_check, transfer_polynomial};
use neutral_asymp::fixtures::{REGULAR_INSTANCES, THEOREM_INSTANCES};
use neutral_asymp::hypotheses::Case;
use neutral_asymp::neutral::{simulate, validate_causality, x_from_z, z_from_x, EquationSpec};
use neutral_asymp::runner::selftest;
use neutral_asymp::seqcore::{normalized_difference_ratios, PolyCoeffs, Seq, Thresholds};
use neutral_asymp::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn majorants() -> Vec<MajorantSpec> {
    vec![
        MajorantSpec::Identity {},
        MajorantSpec::Power { gamma: 0.5 },
        MajorantSpec::Power { gamma: 2.0 },
        MajorantSpec::Affine { alpha: 1.0, beta: 1.0 },
        MajorantSpec::Constant { value: 1.0 },
    ]
}

fn random_weights(rng: &mut ChaCha8Rng, len: usize, total: f64) -> Vec<f64> {
    let shape = rng.gen_range(0..3);
    let mut a: Vec<f64> = (0..len)
        .map(|i| match shape {
            0 => rng.gen::<f64>(),
            1 => {
                if rng.gen::<f64>() < 0.01 {
                    rng.gen::<f64>()
                } else {
                    0.0
                }
            }
            _ => rng.gen::<f64>() / (1.0 + i as f64).powf(1.5),
        })
        .collect();
    let sum: f64 = a.iter().sum();
    if sum > 0.0 {
        a.iter_mut().for_each(|v| *v *= total / sum);
    }
    a
}

fn bihari_validity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let n_end = 10_000i64;
    let mut worst_gap = f64::NEG_INFINITY;
    let mut cases = 0;
    for g in majorants() {
        for lambda in [0.5, 1.0] {
            // stay within the range where the bound exists
            let cap = neutral_asymp::bihari::integrate_recip_g(&g, lambda, 10.0 * lambda + 10.0).unwrap();
            for _ in 0..200 {
                let total = rng.gen::<f64>() * cap;
                let a = Seq::new(1, random_weights(&mut rng, (n_end - 1) as usize, total)).unwrap();
                let bound = bihari_bound(&g, lambda, total).unwrap();
                let Some(m) = bound.m else {
                    return outcome(false, format!("{g:?}: no bound for total {total}"));
                };
                let w = worst_case_w(&a, &g, lambda, 1, n_end).unwrap();
                let gap = (w.max_abs() - m) / (1.0 + m);
                worst_gap = worst_gap.max(gap);
                cases += 1;
                if gap > 1e-6 {
                    return outcome(false, format!("{g:?}, lambda {lambda}: sup w exceeds M = {m} by {gap:e}"));
                }
            }
        }
    }
    outcome(true, format!("{cases} cases, max (sup w - M)/(1+M) = {worst_gap:.3e}"))
}

fn gronwall() -> Outcome {
    let mut worst = 0.0_f64;
    for lambda in [0.5, 1.0, 2.0] {
        for i in 0..=100 {
            let total = 5.0 * i as f64 / 100.0;
            let m = bihari_bound(&MajorantSpec::Identity {}, lambda, total).unwrap().m.unwrap();
            let exact = lambda * total.exp();
            worst = worst.max((m - exact).abs() / m);
        }
    }
    outcome(worst <= 1e-8, format!("max |M - lambda e^S|/M = {worst:.3e}"))
}

fn eval_poly(coeffs: &[f64], n: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * n + c)
}

fn transfer_exactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst_res = 0.0_f64;
    let mut worst_lead = 0.0_f64;
    for deg in 0..=6usize {
        for c in [-3.0, -0.5, 0.0, 0.5, 3.0] {
            for k in -3..=3i64 {
                for _ in 0..4 {
                    let mut phi: Vec<f64> = (0..=deg).map(|_| rng.gen_range(-5.0..5.0)).collect();
                    if phi[deg].abs() < 0.1 {
                        phi[deg] = 1.0;
                    }
                    let psi = transfer_polynomial(&PolyCoeffs::new(phi.clone()), c, k).unwrap();
                    let psi = psi.coeffs();
                    let mut max_phi = 0.0_f64;
                    let mut res = 0.0_f64;
                    for n in 0..=(deg as i64 + 2) {
                        let p = eval_poly(&phi, n as f64);
                        max_phi = max_phi.max(p.abs());
                        let lhs = eval_poly(psi, n as f64) + c * eval_poly(psi, (n + k) as f64);
                        res = res.max((lhs - p).abs());
                    }
                    worst_res = worst_res.max(res / (1.0 + max_phi));
                    let lead = psi.get(deg).copied().unwrap_or(0.0);
                    let want = phi[deg] / (1.0 + c);
                    worst_lead = worst_lead.max((lead - want).abs() / want.abs());
                }
            }
        }
    }
    outcome(
        worst_res <= 1e-10 && worst_lead <= 1e-12,
        format!("max scaled residual {worst_res:.3e}, max leading-coefficient error {worst_lead:.3e}"),
    )
}

fn round_trips() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0_f64;
    for i in 0..500 {
        let k = (i % 7) as i64 - 3;
        let mag = [0.3, 0.5, 2.0, 3.0][(i / 7) % 4];
        let c = if rng.gen::<bool>() { mag } else { -mag };
        // forward recovery multiplies errors by 1/|c| (k > 0) or |c| (k < 0)
        // every |k| steps, so unstable pairs get short windows
        let unstable = (k > 0 && mag < 1.0) || (k < 0 && mag > 1.0);
        let len = if unstable { 10 * k.unsigned_abs() as usize } else { 400 };
        let start = 1 + 3;
        let x = Seq::new(start, (0..len).map(|_| rng.gen_range(-10.0..10.0)).collect()).unwrap();
        let u = Seq::new(start, (0..len).map(|_| c + rng.gen_range(-0.05..0.05)).collect()).unwrap();
        let z = z_from_x(&x, &u, k).unwrap();
        let seed = match k.cmp(&0) {
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(x.slice(z.start(), z.start() + k - 1).unwrap()),
            std::cmp::Ordering::Less => Some(x.slice(z.start() + k, z.start() - 1).unwrap()),
        };
        let back = x_from_z(&z, &u, k, seed.as_ref()).unwrap();
        let scale = x.max_abs();
        for (n, v) in back.iter() {
            worst = worst.max((v - x.get(n).unwrap()).abs() / scale);
        }
    }
    outcome(worst <= 1e-9, format!("500 instances, max relative error {worst:.3e}"))
}

fn theorem_one() -> Outcome {
    let mut ms = Vec::new();
    let mut ks = Vec::new();
    let mut cases = Vec::new();
    let mut s_kinds = Vec::new();
    for name in THEOREM_INSTANCES {
        let cfg = common::config(name);
        let spec = &cfg.spec;
        let (m, s) = (spec.m as f64, spec.s);
        ms.push(spec.m);
        ks.push(spec.k);
        cases.push(cfg.case);
        s_kinds.push(if s == 0.0 { 0 } else if s == m - 2.0 { 1 } else if s == m - 1.0 { 2 } else { 3 });
        let (_, verdict) = match common::run(&cfg) {
            Ok(v) => v,
            Err(e) => return outcome(false, format!("{name}: {e}")),
        };
        let r = &verdict.decomposition.x.remainder_verdict;
        if cfg.thresholds.tau_small != 0.05 || cfg.horizon != 10_000 {
            return outcome(false, format!("{name}: not run at tau_small 0.05 and horizon 1e4"));
        }
        if !(r.is_small_o() && r.exponent == s) {
            return outcome(false, format!("{name}: remainder {:?} at s = {s}", r.kind));
        }
        let low = (s.ceil().max(1.0)) as usize;
        for cm in &verdict.decomposition.coefficient_matches {
            if cm.degree >= low && cm.relative_difference > 0.02 {
                return outcome(
                    false,
                    format!("{name}: degree {} differs by {:.3}", cm.degree, cm.relative_difference),
                );
            }
        }
    }
    let covers = [1, 2, 3].iter().all(|m| ms.contains(m))
        && [-1, 0, 1].iter().all(|k| ks.contains(k))
        && cases.contains(&Case::A)
        && cases.contains(&Case::B)
        && s_kinds.iter().all(|&s| s < 3)
        && THEOREM_INSTANCES.len() >= 6;
    outcome(
        covers,
        format!("{} instances small_o with matching transferred polynomial; coverage {}", THEOREM_INSTANCES.len(), if covers { "complete" } else { "incomplete" }),
    )
}

fn theorem_two() -> Outcome {
    let mut lines = Vec::new();
    for name in REGULAR_INSTANCES {
        let cfg = common::config(name);
        let spec = &cfg.spec;
        let q = spec.q.expect("regular instance without q");
        let u_ok = matches!(spec.u, SeqGen::PowerOffset { rho, .. } if rho == spec.m as f64);
        if !(u_ok && spec.s == q as f64) {
            return outcome(false, format!("{name}: not of the form s = q, u = c + A n^-m"));
        }
        let (_, verdict) = match common::run(&cfg) {
            Ok(v) => v,
            Err(e) => return outcome(false, format!("{name}: {e}")),
        };
        let x = &verdict.decomposition.x;
        let th = Thresholds {
            zero_floor: x.resolution_floor,
            ..cfg.thresholds.clone()
        };
        let report = regularity_check(&x.remainder, q, &th).unwrap();
        if !report.pass {
            return outcome(false, format!("{name}: fails at p = {:?}", report.first_failure));
        }
        lines.push(format!("{name} (q = {q})"));
    }
    outcome(true, format!("regular for all p: {}", lines.join(", ")))
}

fn negative_controls() -> Outcome {
    // (i) b-summability flips with b_n = 1/n
    let mut cfg = common::config("neg_b_harmonic");
    let broken = common::run(&cfg).unwrap().1;
    cfg.spec.b = SeqGen::Power { amp: 1.0, rho: 3.0 };
    let fixed = common::run(&cfg).unwrap().1;
    let flip = cfg.spec.m == 2
        && cfg.spec.s == 1.0
        && !broken.check("b-summability").unwrap().pass
        && fixed.check("b-summability").unwrap().pass;

    // (ii) (−1)^n is o(n) but its first difference is not o(1)
    let alt = Seq::from_fn(1, 10_000, |n| if n % 2 == 0 { 1.0 } else { -1.0 }).unwrap();
    let reg = regularity_check(&alt, 1, &Thresholds::default()).unwrap();
    let apl = !reg.pass && reg.first_failure == Some(1);

    // (iii) σ(n) = n + 1 with k = 0 reads the value being computed
    let spec = EquationSpec {
        m: 1,
        k: 0,
        c: 0.5,
        u: SeqGen::Constant { value: 0.5 },
        a: SeqGen::Power { amp: 1.0, rho: 2.0 },
        b: SeqGen::Constant { value: 0.0 },
        f: RhsSpec::Sigmoid {},
        g: MajorantSpec::Constant { value: 1.0 },
        sigma: DelaySpec::DelayD { d: -1 },
        s: 0.0,
        q: None,
        p: None,
        start: None,
    };
    let dry = validate_causality(&spec, 1000);
    let run = simulate(&spec, &Seq::new(1, vec![1.0]).unwrap(), None, 1000);
    let causal = !dry.is_ok() && matches!(run, Err(Error::Causality { .. }));

    outcome(
        flip && apl && causal,
        format!("b-summability flips: {flip}; (-1)^n fails at p = 1: {apl}; sigma(n) = n + 1 rejected: {causal}"),
    )
}

fn stolz_cesaro() -> Outcome {
    let n_end = 10_000;
    // worst relative deviation per m, per p
    let mut worst = vec![vec![0.0_f64; 5]; 5];
    let perturbations: [fn(i64) -> f64; 3] = [
        |n| 1.0 / n as f64,
        |n| if n % 2 == 0 { 1.0 } else { -1.0 } / n as f64,
        |n| (n as f64).sin() / n as f64,
    ];
    for m in 1..=4usize {
        for lambda in [-10.0, -2.5, 1.0, 3.7, 10.0] {
            for eps in &perturbations {
                let z = Seq::new(1, common::integrate_m(|n| lambda + eps(n), m, n_end)).unwrap();
                let ratios = normalized_difference_ratios(&z, m).unwrap();
                for (p, r) in ratios.iter().enumerate() {
                    let err = (r - lambda).abs() / lambda.abs();
                    worst[m][p] = worst[m][p].max(err);
                }
            }
        }
    }
    let mut failing = Vec::new();
    let mut overall = 0.0_f64;
    for (m, row) in worst.iter().enumerate().skip(1) {
        for (p, &e) in row.iter().enumerate().take(m + 1) {
            overall = overall.max(e);
            if e > 0.05 {
                failing.push(format!("m = {m}, p = {p}: {e:.3e}"));
            }
        }
    }
    if failing.is_empty() {
        outcome(true, format!("max relative deviation {overall:.3e}"))
    } else {
        outcome(false, format!("above 5%: {}", failing.join("; ")))
    }
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let lines = selftest(dir.path()).unwrap();
    let bad: Vec<String> = lines
        .iter()
        .filter(|l| !l.pass())
        .map(|l| format!("{} (exit {} vs {}, deterministic {})", l.fixture, l.got, l.expected, l.deterministic))
        .collect();
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} fixtures byte-identical across two runs", lines.len())
        } else {
            bad.join("; ")
        },
    )
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("bihari validity", 10, bihari_validity),
        ("gronwall closed form", 1, gronwall),
        ("transfer exactness", 1, transfer_exactness),
        ("round trips", 5, round_trips),
        ("asymptotically polynomial instances", 30, theorem_one),
        ("regular refinement", 10, theorem_two),
        ("negative controls", 5, negative_controls),
        ("difference ratios", 5, stolz_cesaro),
        ("determinism", 60, determinism),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = f();
        let elapsed = t.elapsed();
        let in_time = elapsed < Duration::from_secs(*limit);
        let pass = out.pass && in_time;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {}: {} {name} [{:.3}s, limit {limit}s] {}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            out.detail
        );
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
