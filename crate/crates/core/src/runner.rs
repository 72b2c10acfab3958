//! Batch runs: config in, `trace.csv`, `decomposition.json` and
//! `verdict.json` out.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::decomp::SolutionDecomposition;
use crate::error::{Error, Result};
use crate::fixtures::FIXTURES;
use crate::hypotheses::{theorem_dispatch, HypothesisVerdict};
use crate::neutral::{simulate, SolutionTrace};
use crate::seqcore::delta;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_SIMULATION: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    HypothesisFailed,
    SimulationFailed,
    ConfigError,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => EXIT_PASS,
            Outcome::ConfigError => EXIT_CONFIG,
            Outcome::HypothesisFailed => EXIT_HYPOTHESIS,
            Outcome::SimulationFailed => EXIT_SIMULATION,
        }
    }
}

#[derive(Debug)]
pub struct RunReport {
    pub outcome: Outcome,
    pub message: String,
    pub out_dir: Option<PathBuf>,
    pub verdict: Option<HypothesisVerdict>,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        self.outcome.exit_code()
    }

    fn failed(outcome: Outcome, err: &Error, out_dir: Option<PathBuf>) -> Self {
        RunReport {
            outcome,
            message: err.to_string(),
            out_dir,
            verdict: None,
        }
    }
}

/// Options that override fields of the config file.
#[derive(Clone, Debug, Default)]
pub struct RunOverrides {
    pub horizon: Option<i64>,
    pub out_dir: Option<PathBuf>,
}

/// Loads, validates and runs a config file.
pub fn run_path(path: &Path, overrides: &RunOverrides) -> RunReport {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let err = Error::Config(format!("cannot read {}: {e}", path.display()));
            return RunReport::failed(Outcome::ConfigError, &err, None);
        }
    };
    let base = path.parent().unwrap_or(Path::new("."));
    run_json(&text, base, overrides)
}

/// Runs a config given as JSON text. A relative `output` is resolved
/// against `base`.
pub fn run_json(text: &str, base: &Path, overrides: &RunOverrides) -> RunReport {
    let mut cfg: ExperimentConfig = match serde_json::from_str(text) {
        Ok(c) => c,
        Err(e) => return RunReport::failed(Outcome::ConfigError, &Error::Config(e.to_string()), None),
    };
    if let Some(h) = overrides.horizon {
        cfg.horizon = h;
    }
    let out_dir = match (&overrides.out_dir, &cfg.output) {
        (Some(dir), _) => dir.clone(),
        (None, Some(dir)) if dir.is_absolute() => dir.clone(),
        (None, Some(dir)) => base.join(dir),
        (None, None) => base.join("out"),
    };
    run_config(&cfg, &out_dir)
}

fn classify(err: &Error) -> Outcome {
    match err {
        e if e.is_simulation_failure() => Outcome::SimulationFailed,
        Error::Consistency(_) => Outcome::SimulationFailed,
        _ => Outcome::ConfigError,
    }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    outcome: Outcome,
    exit_code: i32,
    kind: &'a str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    causality: Option<CausalityDetail>,
}

#[derive(Serialize)]
struct CausalityDetail {
    n: i64,
    sigma: i64,
    lo: i64,
    hi: i64,
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::Causality { .. } => "causality",
        Error::Divergence { .. } => "divergence",
        Error::SingularRecovery { .. } => "singular_recovery",
        Error::Consistency(_) => "consistency",
        _ => "error",
    }
}

fn write_error(out_dir: &Path, outcome: Outcome, err: &Error) -> Result<()> {
    let causality = match *err {
        Error::Causality { n, sigma, lo, hi } => Some(CausalityDetail { n, sigma, lo, hi }),
        _ => None,
    };
    let report = ErrorReport {
        outcome,
        exit_code: outcome.exit_code(),
        kind: error_kind(err),
        message: err.to_string(),
        causality,
    };
    write_atomic(&out_dir.join("error.json"), &json_bytes(&report)?)
}

/// Validates, simulates, analyses and writes all artifacts to `out_dir`.
pub fn run_config(cfg: &ExperimentConfig, out_dir: &Path) -> RunReport {
    let out = Some(out_dir.to_path_buf());
    if let Err(e) = cfg.validate() {
        return RunReport::failed(Outcome::ConfigError, &e, out);
    }
    let analysed = cfg
        .x_seed()
        .and_then(|x| Ok((x, cfg.z_seed()?)))
        .and_then(|(x, z)| simulate(&cfg.spec, &x, z.as_ref(), cfg.horizon))
        .and_then(|trace| {
            let verdict = theorem_dispatch(&cfg.spec, &trace, cfg.case, cfg.mode, &cfg.thresholds)?;
            Ok((trace, verdict))
        });
    let (trace, verdict) = match analysed {
        Ok(v) => v,
        Err(e) => {
            let outcome = classify(&e);
            let mut report = RunReport::failed(outcome, &e, out.clone());
            if outcome == Outcome::SimulationFailed {
                if let Err(io) = std::fs::create_dir_all(out_dir)
                    .map_err(Error::from)
                    .and_then(|_| write_error(out_dir, outcome, &e))
                {
                    report.message = format!("{}; writing error.json failed: {io}", report.message);
                }
            }
            return report;
        }
    };
    if let Err(e) = write_artifacts(cfg, &trace, &verdict, out_dir) {
        return RunReport::failed(Outcome::ConfigError, &e, out);
    }
    let outcome = if verdict.overall_pass {
        Outcome::Pass
    } else {
        Outcome::HypothesisFailed
    };
    let message = match &verdict.first_failure {
        None => format!(
            "all hypotheses and the conclusion hold (remainder o(n^{}))",
            cfg.spec.s
        ),
        Some(name) => format!("check `{name}` failed"),
    };
    RunReport {
        outcome,
        message,
        out_dir: out,
        verdict: Some(verdict),
    }
}

fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Writes through a temporary file in the same directory and renames it.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// The CSV body: `n,x,z,delta_m_z` for `n ∈ [n₀, N]`, floats with 17
/// significant digits, `delta_m_z` empty where it is not defined.
pub fn trace_csv(trace: &SolutionTrace, m: usize) -> Result<String> {
    let d = delta(&trace.z, m)?;
    let mut out = String::with_capacity(trace.z.len() * 80);
    out.push_str("n,x,z,delta_m_z\n");
    for (n, z) in trace.z.iter() {
        let x = trace.x.get(n)?;
        write!(out, "{n},{x:.16e},{z:.16e},").expect("writing to a String");
        if let Some(dz) = d.at(n) {
            write!(out, "{dz:.16e}").expect("writing to a String");
        }
        out.push('\n');
    }
    Ok(out)
}

#[derive(Serialize)]
struct VerdictFile<'a> {
    exit_code: i32,
    n0: i64,
    horizon: i64,
    #[serde(flatten)]
    verdict: &'a HypothesisVerdict,
}

fn write_artifacts(
    cfg: &ExperimentConfig,
    trace: &SolutionTrace,
    verdict: &HypothesisVerdict,
    out_dir: &Path,
) -> Result<()> {
    std::fs::create_dir_all(out_dir)?;
    write_atomic(&out_dir.join("trace.csv"), trace_csv(trace, cfg.spec.m)?.as_bytes())?;
    let decomposition: &SolutionDecomposition = &verdict.decomposition;
    write_atomic(&out_dir.join("decomposition.json"), &json_bytes(decomposition)?)?;
    let exit_code = if verdict.overall_pass {
        EXIT_PASS
    } else {
        EXIT_HYPOTHESIS
    };
    let file = VerdictFile {
        exit_code,
        n0: trace.n0,
        horizon: trace.horizon,
        verdict,
    };
    write_atomic(&out_dir.join("verdict.json"), &json_bytes(&file)?)
}

/// One line per catalog entry.
pub fn catalog_text() -> String {
    let mut out = String::new();
    for entry in crate::catalog::listing() {
        writeln!(out, "{entry}").expect("writing to a String");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestLine {
    pub fixture: &'static str,
    pub expected: i32,
    pub got: i32,
    pub deterministic: bool,
}

impl SelftestLine {
    pub fn pass(&self) -> bool {
        self.expected == self.got && self.deterministic
    }
}

fn read_outputs(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = ["trace.csv", "decomposition.json", "verdict.json", "error.json"]
        .iter()
        .filter_map(|name| {
            std::fs::read(dir.join(name))
                .ok()
                .map(|bytes| (name.to_string(), bytes))
        })
        .collect();
    files.sort();
    files
}

/// Runs every embedded fixture twice into `scratch` and compares exit codes
/// and output bytes.
pub fn selftest(scratch: &Path) -> Result<Vec<SelftestLine>> {
    let mut lines = Vec::new();
    for fixture in FIXTURES {
        let mut outputs = Vec::new();
        let mut codes = Vec::new();
        for round in 0..2 {
            let dir = scratch.join(format!("{}-{round}", fixture.name));
            if dir.exists() {
                std::fs::remove_dir_all(&dir)?;
            }
            let overrides = RunOverrides {
                horizon: None,
                out_dir: Some(dir.clone()),
            };
            codes.push(run_json(fixture.json, scratch, &overrides).exit_code());
            outputs.push(read_outputs(&dir));
        }
        lines.push(SelftestLine {
            fixture: fixture.name,
            expected: fixture.expected_exit,
            got: codes[0],
            deterministic: codes[0] == codes[1] && outputs[0] == outputs[1],
        });
    }
    Ok(lines)
}
