use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::ExperimentError;
use crate::attacks::{AttackKind, BpParams};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaGrid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Default for GammaGrid {
    fn default() -> Self {
        GammaGrid {
            start: 2.1,
            stop: 4.0,
            step: 0.1,
        }
    }
}

impl GammaGrid {
    /// Grid values rounded to one decimal, `stop` included when it lies on
    /// the grid.
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| ((self.start + i as f64 * self.step) * 10.0).round() / 10.0)
            .collect()
    }
}

/// Sweep definition. Loaded from JSON; every field has a default.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: usize,
    pub m: usize,
    pub gamma: GammaGrid,
    pub realizations: usize,
    pub base_seed: u64,
    pub attacks: Vec<AttackKind>,
    pub bp: BpParams,
    /// Where `run_experiment` writes its files; nothing is written when unset.
    pub out_dir: Option<PathBuf>,
    /// Worker threads; 0 uses every available core.
    pub threads: usize,
    /// Also write one JSON line per cell to `cells.jsonl`.
    pub dump_cells: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            n: 1000,
            m: 2,
            gamma: GammaGrid::default(),
            realizations: 100,
            base_seed: 0x5eed_2025,
            attacks: AttackKind::ALL.to_vec(),
            bp: BpParams::default(),
            out_dir: None,
            threads: 0,
            dump_cells: false,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json_file(path: &Path) -> Result<Self, ExperimentError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ExperimentError::Config(format!("reading {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| ExperimentError::Config(format!("parsing {}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |msg: String| Err(ExperimentError::Config(msg));
        let GammaGrid { start, stop, step } = self.gamma;
        if !(step > 0.0) {
            return bad(format!("gamma step {step} must be > 0"));
        }
        if !(start > 2.0) {
            return bad(format!("gamma start {start} must be > 2"));
        }
        if !(stop >= start) {
            return bad(format!("gamma stop {stop} below start {start}"));
        }
        if self.realizations == 0 {
            return bad("realizations must be >= 1".into());
        }
        if self.m == 0 || self.n < self.m + 1 {
            return bad(format!(
                "need m >= 1 and n >= m + 1 (n = {}, m = {})",
                self.n, self.m
            ));
        }
        if self.attacks.is_empty() {
            return bad("at least one attack is required".into());
        }
        let mut sorted = self.attacks.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != self.attacks.len() {
            return bad("duplicate attack in list".into());
        }
        self.bp
            .validate()
            .map_err(|e| ExperimentError::Config(e.to_string()))?;
        Ok(())
    }

    pub fn gamma_values(&self) -> Vec<f64> {
        self.gamma.values()
    }

    /// Attack list in canonical order.
    pub fn attack_kinds(&self) -> Vec<AttackKind> {
        let mut a = self.attacks.clone();
        a.sort();
        a
    }
}
