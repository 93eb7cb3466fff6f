use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Deserializer, Serialize};

use super::{load_csv, synthesize_gaussian, Dataset, LoadReport, SyntheticSpec};
use crate::error::{Error, Result};
use crate::kernel::KernelConfig;
use crate::maps::MapSpec;
use crate::ml::{ClassicalKernel, SvmParams};

/// Environment variable that replaces both the split seed and the kernel seed.
pub const SEED_ENV: &str = "QUERNEL_SEED";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum DatasetSource {
    Csv {
        /// Relative paths resolve against the config file's directory.
        path: PathBuf,
        label_column: String,
    },
    Synthetic(SyntheticSpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Preprocessing {
    #[serde(default = "yes")]
    pub standardize: bool,
    #[serde(default)]
    pub pca_k: Option<usize>,
    /// Min-max scale every feature of the training split into `[0, π]`.
    #[serde(default = "yes")]
    pub angle_scaling: bool,
}

fn yes() -> bool {
    true
}

impl Default for Preprocessing {
    fn default() -> Self {
        Self {
            standardize: true,
            pca_k: None,
            angle_scaling: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitConfig {
    #[serde(default = "default_fraction")]
    pub train_fraction: f64,
    #[serde(default = "yes")]
    pub stratified: bool,
    #[serde(default)]
    pub seed: u64,
}

fn default_fraction() -> f64 {
    0.8
}

impl Default for SplitConfig {
    fn default() -> Self {
        Self {
            train_fraction: default_fraction(),
            stratified: true,
            seed: 0,
        }
    }
}

/// A quantum feature map or a classical baseline, selected by `"kind"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum KernelChoice {
    Quantum(MapSpec),
    Classical(ClassicalKernel),
}

impl KernelChoice {
    pub fn name(&self) -> &'static str {
        match self {
            KernelChoice::Quantum(m) => m.name(),
            KernelChoice::Classical(c) => c.name(),
        }
    }
}

impl<'de> Deserialize<'de> for KernelChoice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = serde_json::Value::deserialize(d)?;
        let kind = v
            .get("kind")
            .and_then(|k| k.as_str())
            .ok_or_else(|| D::Error::custom("kernel entry needs a string \"kind\""))?;
        match kind {
            "z" | "zz" | "cp" => serde_json::from_value(v).map(KernelChoice::Quantum),
            "linear" | "poly" | "rbf" | "sigmoid" => serde_json::from_value(v).map(KernelChoice::Classical),
            other => {
                return Err(D::Error::custom(format!(
                    "unknown kernel kind {other:?} (expected z, zz, cp, linear, poly, rbf or sigmoid)"
                )))
            }
        }
        .map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub dataset: DatasetSource,
    #[serde(default)]
    pub preprocessing: Preprocessing,
    pub kernels: Vec<KernelChoice>,
    /// Sampling settings shared by every quantum kernel.
    #[serde(default)]
    pub kernel: KernelConfig,
    #[serde(default)]
    pub svm: SvmParams,
    #[serde(default)]
    pub split: SplitConfig,
    #[serde(default = "one_run")]
    pub runs: usize,
}

fn one_run() -> usize {
    1
}

impl ExperimentConfig {
    /// Parses and validates; relative CSV paths become relative to the file.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        let mut cfg = Self::from_json(&text)?;
        if let DatasetSource::Csv { path: p, .. } = &mut cfg.dataset {
            if p.is_relative() {
                if let Some(dir) = path.parent() {
                    *p = dir.join(&*p);
                }
            }
        }
        Ok(cfg)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let f = self.split.train_fraction;
        if !(f > 0.0 && f < 1.0) {
            return Err(Error::Config(format!("split.train_fraction {f} must lie in (0, 1)")));
        }
        if self.runs == 0 {
            return Err(Error::Config("runs must be >= 1".into()));
        }
        if self.kernels.is_empty() {
            return Err(Error::Config("at least one kernel is required".into()));
        }
        if self.preprocessing.pca_k == Some(0) {
            return Err(Error::Config("preprocessing.pca_k must be >= 1".into()));
        }
        if !(self.svm.c > 0.0 && self.svm.c.is_finite()) || !(self.svm.tol > 0.0) {
            return Err(Error::Config("svm.c and svm.tol must be positive".into()));
        }
        if let DatasetSource::Synthetic(s) = &self.dataset {
            if !(s.separation >= 0.0) {
                return Err(Error::Config("synthetic separation must be >= 0".into()));
            }
        }
        for k in &self.kernels {
            match k {
                KernelChoice::Quantum(m) if m.reps() == 0 => {
                    return Err(Error::Config(format!("{} map reps must be >= 1", m.name())))
                }
                KernelChoice::Quantum(MapSpec::Cp(p)) => p.validate().map_err(|e| Error::Config(e.to_string()))?,
                _ => {}
            }
        }
        self.kernel.validate()
    }

    /// Applies `QUERNEL_SEED` if set; it beats both `split.seed` and `kernel.seed`.
    pub fn apply_env_seed(&mut self) -> Result<Option<u64>> {
        match std::env::var(SEED_ENV) {
            Ok(s) => {
                let seed = s
                    .trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("{SEED_ENV}={s:?} is not an unsigned integer")))?;
                self.override_seed(seed);
                Ok(Some(seed))
            }
            Err(_) => Ok(None),
        }
    }

    pub fn override_seed(&mut self, seed: u64) {
        self.split.seed = seed;
        self.kernel.seed = seed;
    }

    /// Report labels, one per kernel; repeated kinds get `-1`, `-2`, … suffixes.
    pub fn kernel_labels(&self) -> Vec<String> {
        let mut totals: BTreeMap<&str, usize> = BTreeMap::new();
        for k in &self.kernels {
            *totals.entry(k.name()).or_default() += 1;
        }
        let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
        self.kernels
            .iter()
            .map(|k| {
                let n = seen.entry(k.name()).or_default();
                *n += 1;
                if totals[k.name()] > 1 {
                    format!("{}-{}", k.name(), n)
                } else {
                    k.name().to_string()
                }
            })
            .collect()
    }

    pub fn load_dataset(&self) -> Result<(Dataset, LoadReport)> {
        match &self.dataset {
            DatasetSource::Csv { path, label_column } => load_csv(path, label_column),
            DatasetSource::Synthetic(spec) => {
                let ds = synthesize_gaussian(spec)?;
                let n = ds.len();
                Ok((
                    ds,
                    LoadReport {
                        rows_read: n,
                        rows_dropped: 0,
                    },
                ))
            }
        }
    }
}
