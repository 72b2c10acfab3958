//! Experiment configuration files.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypotheses::{Case, Mode};
use crate::neutral::{derive_z_seed, EquationSpec, SEED_TOLERANCE};
use crate::seqcore::{Seq, Thresholds};

/// Shortest run (in steps past `n₀`) that leaves room for every diagnostic.
pub const MIN_HORIZON_SPAN: i64 = 128;

/// Initial values.
///
/// `x` lists consecutive terms from `x_start` (default: the start of the
/// spec's seed range) to the end of the seed range. Starting earlier
/// supplies history for delays that reach further back. `z`, if present,
/// lists `z_{n₀}, …, z_{n₀+m−1}` and must agree with `x`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Seeds {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_start: Option<i64>,
    pub x: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub spec: EquationSpec,
    pub seeds: Seeds,
    pub horizon: i64,
    pub case: Case,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default)]
    pub thresholds: Thresholds,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn validate(&self) -> Result<()> {
        self.spec.validate()?;
        self.thresholds.validate()?;
        let n0 = self.spec.start();
        if self.horizon - n0 < MIN_HORIZON_SPAN {
            return Err(Error::invalid(
                "horizon",
                format!(
                    "{} is too close to the start index {n0}; need at least {}",
                    self.horizon,
                    n0 + MIN_HORIZON_SPAN
                ),
            ));
        }
        if self.mode == Mode::Regular {
            match self.spec.q {
                Some(q) if self.spec.s == q as f64 => {}
                Some(q) => {
                    return Err(Error::Config(format!(
                        "regular mode needs s = q; got s = {}, q = {q}",
                        self.spec.s
                    )))
                }
                None => return Err(Error::Config("regular mode needs `spec.q`".into())),
            }
        }
        let x = self.x_seed()?;
        if let Some(z) = self.z_seed()? {
            let derived = derive_z_seed(&self.spec, &x)?;
            for ((n, want), &got) in derived.iter().zip(z.values()) {
                if (want - got).abs() > SEED_TOLERANCE * (1.0 + want.abs()) {
                    return Err(Error::Seed(format!(
                        "seeds.z at index {n} is {got}, but seeds.x gives {want}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn x_seed(&self) -> Result<Seq> {
        let (first, hi) = self.spec.x_seed_range();
        let lo = self.seeds.x_start.unwrap_or(first);
        if lo > first || lo < 1 {
            return Err(Error::Seed(format!(
                "seeds.x_start = {lo} must lie in [1, {first}]"
            )));
        }
        let need = (hi - lo + 1) as usize;
        if self.seeds.x.len() != need {
            return Err(Error::Seed(format!(
                "seeds.x must list {need} values for indices {lo}..={hi}, found {}",
                self.seeds.x.len()
            )));
        }
        Seq::new(lo, self.seeds.x.clone())
    }

    pub fn z_seed(&self) -> Result<Option<Seq>> {
        let Some(z) = &self.seeds.z else {
            return Ok(None);
        };
        let n0 = self.spec.start();
        if z.len() != self.spec.m {
            return Err(Error::Seed(format!(
                "seeds.z must list m = {} values starting at index {n0}, found {}",
                self.spec.m,
                z.len()
            )));
        }
        Seq::new(n0, z.clone()).map(Some)
    }
}
