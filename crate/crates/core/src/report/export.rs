use std::fs::{self, File};
use std::io::BufWriter;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::benchmark::{aggregate, compute_kernel, encoded_width, evaluate, kernel_resources, run_seeds};
use super::{read_json, write_json, BenchmarkReport, DatasetSummary, RunRecord, TOOL_VERSION};
use crate::data::{ExperimentConfig, KernelChoice};
use crate::error::{Error, Result};
use crate::kernel::{read_matrix_csv, write_matrix_csv, KernelConfig};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub kernel: String,
    pub spec: KernelChoice,
    /// Sampling settings with this run's seed.
    pub kernel_config: KernelConfig,
    pub run: usize,
    pub split_seed: u64,
    pub train_file: String,
    pub cross_file: String,
    pub train_labels: Vec<i8>,
    pub test_labels: Vec<i8>,
    pub clamped_entries: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelManifest {
    pub tool_version: String,
    pub config: ExperimentConfig,
    pub dataset: DatasetSummary,
    /// Feature count seen by the kernels, after any projection.
    pub num_features: usize,
    pub entries: Vec<ManifestEntry>,
}

fn write_matrix(dir: &Path, name: &str, m: &nalgebra::DMatrix<f64>, rows: &[String], cols: &[String]) -> Result<()> {
    let path = dir.join(name);
    let f = File::create(&path).map_err(|e| Error::io(path.display().to_string(), e))?;
    write_matrix_csv(BufWriter::new(f), m, rows, cols)
}

/// Writes every run's train Gram and test×train cross matrix plus a manifest.
/// Output depends only on the config, so reruns are byte-identical.
pub fn export_kernels(cfg: &ExperimentConfig, dir: &Path) -> Result<KernelManifest> {
    cfg.validate().map_err(|e| e.in_stage("config"))?;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir.display().to_string(), e))?;
    let (ds, load) = cfg.load_dataset().map_err(|e| e.in_stage("load"))?;
    let labels = cfg.kernel_labels();
    let mut entries = Vec::new();
    for run in 0..cfg.runs {
        let (split_seed, kcfg) = run_seeds(cfg, run);
        let prep = super::prepare_split(cfg, &ds, split_seed)?;
        for (choice, label) in cfg.kernels.iter().zip(&labels) {
            let (gram, cross, clamped) = compute_kernel(choice, &prep, &kcfg).map_err(|e| e.in_stage("kernel"))?;
            let train_file = format!("{label}.run{run}.train.csv");
            let cross_file = format!("{label}.run{run}.cross.csv");
            write_matrix(dir, &train_file, &gram, &prep.train_ids, &prep.train_ids).map_err(|e| e.in_stage("write"))?;
            write_matrix(dir, &cross_file, &cross, &prep.test_ids, &prep.train_ids).map_err(|e| e.in_stage("write"))?;
            entries.push(ManifestEntry {
                kernel: label.clone(),
                spec: *choice,
                kernel_config: kcfg,
                run,
                split_seed,
                train_file,
                cross_file,
                train_labels: prep.train_y.clone(),
                test_labels: prep.test_y.clone(),
                clamped_entries: clamped,
            });
        }
    }
    let manifest = KernelManifest {
        tool_version: TOOL_VERSION.to_string(),
        config: cfg.clone(),
        dataset: DatasetSummary {
            rows: ds.len(),
            rows_dropped: load.rows_dropped,
            num_features: ds.num_features(),
            class_names: ds.class_names.clone(),
        },
        num_features: encoded_width(cfg, &ds),
        entries,
    };
    write_json(&dir.join(MANIFEST_FILE), &manifest).map_err(|e| e.in_stage("write"))?;
    Ok(manifest)
}

/// Trains and scores from matrices written by [`export_kernels`], without
/// re-evaluating any kernel.
pub fn run_benchmark_from_kernels(dir: &Path) -> Result<BenchmarkReport> {
    let manifest: KernelManifest = read_json(&dir.join(MANIFEST_FILE)).map_err(|e| e.in_stage("load"))?;
    let cfg = &manifest.config;
    let mut records = Vec::with_capacity(manifest.entries.len());
    for e in &manifest.entries {
        let (gram, g_rows, g_cols) = read_matrix_csv(&dir.join(&e.train_file)).map_err(|e| e.in_stage("load"))?;
        let (cross, c_rows, c_cols) = read_matrix_csv(&dir.join(&e.cross_file)).map_err(|e| e.in_stage("load"))?;
        if g_rows != g_cols || c_cols != g_cols || g_rows.len() != e.train_labels.len() || c_rows.len() != e.test_labels.len()
        {
            return Err(Error::Data(format!("{}: matrices do not match the manifest", e.kernel)).in_stage("load"));
        }
        let start = Instant::now();
        let ev = evaluate(&gram, &cross, &e.train_labels, &e.test_labels, &cfg.svm, e.clamped_entries)?;
        records.push(RunRecord {
            run: e.run,
            split_seed: e.split_seed,
            kernel_seed: e.kernel_config.seed,
            kernel: e.kernel.clone(),
            kind: e.spec.name().to_string(),
            train_size: e.train_labels.len(),
            test_size: e.test_labels.len(),
            metrics: ev.metrics,
            confusion: ev.confusion,
            wall_time: start.elapsed().as_secs_f64(),
            diagnostics: ev.diagnostics,
        });
    }
    let labels = cfg.kernel_labels();
    Ok(BenchmarkReport {
        tool_version: TOOL_VERSION.to_string(),
        config: cfg.clone(),
        dataset: manifest.dataset.clone(),
        aggregates: aggregate(&labels, &records),
        records,
        resources: kernel_resources(cfg, manifest.num_features).map_err(|e| e.in_stage("resources"))?,
    })
}
