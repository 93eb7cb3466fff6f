use std::time::Instant;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::TOOL_VERSION;
use crate::data::{random_split, stratified_split, Dataset, ExperimentConfig, KernelChoice};
use crate::error::Result;
use crate::kernel::{cross_kernel, kernel_matrix, KernelConfig, KernelMatrix};
use crate::maps::{resource_report, FeatureMap, ResourceReport};
use crate::ml::{
    compute_metrics, confusion, mean_std, pca_fit, svm_predict, svm_train, AngleScaler, ConfusionCounts, Metrics,
    Standardizer, SvmParams, METRIC_NAMES,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunDiagnostics {
    pub svm_iterations: usize,
    pub support_vectors: usize,
    /// Sampled kernel entries pulled back into `[0, 1]`.
    pub clamped_entries: usize,
    /// Smallest eigenvalue of the training Gram matrix; negative means not PSD.
    pub gram_min_eigenvalue: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run: usize,
    pub split_seed: u64,
    pub kernel_seed: u64,
    pub kernel: String,
    pub kind: String,
    pub train_size: usize,
    pub test_size: usize,
    #[serde(flatten)]
    pub metrics: Metrics,
    pub confusion: ConfusionCounts,
    /// Kernel evaluation, training and prediction, in seconds.
    pub wall_time: f64,
    pub diagnostics: RunDiagnostics,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub kernel: String,
    pub metric: String,
    pub runs: usize,
    pub mean: f64,
    /// Sample standard deviation; 0 for a single run.
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelResources {
    pub kernel: String,
    pub num_features: usize,
    #[serde(flatten)]
    pub resources: ResourceReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSummary {
    pub rows: usize,
    pub rows_dropped: usize,
    pub num_features: usize,
    pub class_names: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkReport {
    pub tool_version: String,
    /// Effective config, after any seed override.
    pub config: ExperimentConfig,
    pub dataset: DatasetSummary,
    pub records: Vec<RunRecord>,
    pub aggregates: Vec<Aggregate>,
    pub resources: Vec<KernelResources>,
}

impl BenchmarkReport {
    pub fn records_for<'a>(&'a self, kernel: &'a str) -> impl Iterator<Item = &'a RunRecord> + 'a {
        self.records.iter().filter(move |r| r.kernel == kernel)
    }

    pub fn kernels(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for r in &self.records {
            if !out.contains(&r.kernel) {
                out.push(r.kernel.clone());
            }
        }
        out
    }
}

/// Encoded train/test features for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct PreparedSplit {
    pub train_x: Vec<Vec<f64>>,
    pub test_x: Vec<Vec<f64>>,
    pub train_y: Vec<i8>,
    pub test_y: Vec<i8>,
    pub train_ids: Vec<String>,
    pub test_ids: Vec<String>,
}

/// Split with `split_seed`, then standardize, project and angle-scale, every
/// transform fitted on the training side only.
pub fn prepare_split(cfg: &ExperimentConfig, ds: &Dataset, split_seed: u64) -> Result<PreparedSplit> {
    let (train, test) = if cfg.split.stratified {
        stratified_split(ds, cfg.split.train_fraction, split_seed)
    } else {
        random_split(ds, cfg.split.train_fraction, split_seed)
    }
    .map_err(|e| e.in_stage("split"))?;

    let prep = || -> Result<(Vec<Vec<f64>>, Vec<Vec<f64>>)> {
        let (mut a, mut b) = (train.features.clone(), test.features.clone());
        let p = &cfg.preprocessing;
        if p.standardize {
            let s = Standardizer::fit(&a)?;
            a = s.transform(&a)?;
            b = s.transform(&b)?;
        }
        if let Some(k) = p.pca_k {
            let pca = pca_fit(&a, k)?;
            a = pca.transform(&a)?;
            b = pca.transform(&b)?;
        }
        if p.angle_scaling {
            let s = AngleScaler::fit(&a)?;
            a = s.transform(&a)?;
            b = s.transform(&b)?;
        }
        Ok((a, b))
    };
    let (train_x, test_x) = prep().map_err(|e| e.in_stage("preprocess"))?;
    Ok(PreparedSplit {
        train_x,
        test_x,
        train_y: train.labels,
        test_y: test.labels,
        train_ids: train.ids,
        test_ids: test.ids,
    })
}

pub(crate) fn run_seeds(cfg: &ExperimentConfig, run: usize) -> (u64, KernelConfig) {
    let split_seed = cfg.split.seed.wrapping_add(run as u64);
    let mut k = cfg.kernel;
    k.seed = k.seed.wrapping_add(run as u64);
    (split_seed, k)
}

/// Train Gram matrix, test×train cross matrix and clamped-entry count.
pub(crate) fn compute_kernel(
    choice: &KernelChoice,
    prep: &PreparedSplit,
    kcfg: &KernelConfig,
) -> Result<(DMatrix<f64>, DMatrix<f64>, usize)> {
    match choice {
        KernelChoice::Quantum(map) => {
            let gram = kernel_matrix(&prep.train_x, map, kcfg)?;
            let cross = cross_kernel(&prep.train_x, &prep.test_x, map, kcfg)?;
            let clamped = gram.clamped_entries();
            Ok((gram.matrix().clone(), cross, clamped))
        }
        KernelChoice::Classical(k) => Ok((k.gram(&prep.train_x)?, k.cross(&prep.train_x, &prep.test_x)?, 0)),
    }
}

pub(crate) struct Evaluation {
    pub metrics: Metrics,
    pub confusion: ConfusionCounts,
    pub diagnostics: RunDiagnostics,
}

pub(crate) fn evaluate(
    gram: &DMatrix<f64>,
    cross: &DMatrix<f64>,
    train_y: &[i8],
    test_y: &[i8],
    svm: &SvmParams,
    clamped_entries: usize,
) -> Result<Evaluation> {
    let model = svm_train(gram, train_y, svm).map_err(|e| e.in_stage("train"))?;
    let pred = svm_predict(&model, cross).map_err(|e| e.in_stage("predict"))?;
    let c = confusion(test_y, &pred).map_err(|e| e.in_stage("metrics"))?;
    let min_eig = KernelMatrix::from_matrix(gram.clone())
        .map(|k| k.min_eigenvalue())
        .unwrap_or(f64::NAN);
    Ok(Evaluation {
        metrics: compute_metrics(&c),
        confusion: c,
        diagnostics: RunDiagnostics {
            svm_iterations: model.iterations,
            support_vectors: model.support_indices.len(),
            clamped_entries,
            gram_min_eigenvalue: min_eig,
        },
    })
}

pub(crate) fn aggregate(labels: &[String], records: &[RunRecord]) -> Vec<Aggregate> {
    let mut out = Vec::new();
    for label in labels {
        let recs: Vec<&RunRecord> = records.iter().filter(|r| &r.kernel == label).collect();
        if recs.is_empty() {
            continue;
        }
        for metric in METRIC_NAMES {
            let v: Vec<f64> = recs.iter().map(|r| r.metrics.get(metric).expect("known metric")).collect();
            let (mean, std) = mean_std(&v);
            out.push(Aggregate {
                kernel: label.clone(),
                metric: metric.to_string(),
                runs: v.len(),
                mean,
                std,
                min: v.iter().copied().fold(f64::INFINITY, f64::min),
                max: v.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            });
        }
    }
    out
}

pub(crate) fn kernel_resources(cfg: &ExperimentConfig, num_features: usize) -> Result<Vec<KernelResources>> {
    let labels = cfg.kernel_labels();
    let mut out = Vec::new();
    for (choice, label) in cfg.kernels.iter().zip(labels) {
        if let KernelChoice::Quantum(map) = choice {
            let c = map.build(&vec![0.0; num_features])?;
            out.push(KernelResources {
                kernel: label,
                num_features,
                resources: resource_report(&c),
            });
        }
    }
    Ok(out)
}

pub(crate) fn encoded_width(cfg: &ExperimentConfig, ds: &Dataset) -> usize {
    cfg.preprocessing.pca_k.unwrap_or(ds.num_features())
}

/// Full pipeline for every `(run, kernel)` pair.
///
/// Run `r` uses `split.seed + r` for the split and `kernel.seed + r` for
/// sampled kernels. The dataset itself is fixed across runs.
pub fn run_benchmark(cfg: &ExperimentConfig) -> Result<BenchmarkReport> {
    cfg.validate().map_err(|e| e.in_stage("config"))?;
    let (ds, load) = cfg.load_dataset().map_err(|e| e.in_stage("load"))?;
    let labels = cfg.kernel_labels();
    let mut records = Vec::with_capacity(cfg.runs * labels.len());
    for run in 0..cfg.runs {
        let (split_seed, kcfg) = run_seeds(cfg, run);
        let prep = prepare_split(cfg, &ds, split_seed)?;
        for (choice, label) in cfg.kernels.iter().zip(&labels) {
            let start = Instant::now();
            let (gram, cross, clamped) = compute_kernel(choice, &prep, &kcfg).map_err(|e| e.in_stage("kernel"))?;
            let ev = evaluate(&gram, &cross, &prep.train_y, &prep.test_y, &cfg.svm, clamped)?;
            records.push(RunRecord {
                run,
                split_seed,
                kernel_seed: kcfg.seed,
                kernel: label.clone(),
                kind: choice.name().to_string(),
                train_size: prep.train_y.len(),
                test_size: prep.test_y.len(),
                metrics: ev.metrics,
                confusion: ev.confusion,
                wall_time: start.elapsed().as_secs_f64(),
                diagnostics: ev.diagnostics,
            });
        }
    }
    let width = encoded_width(cfg, &ds);
    Ok(BenchmarkReport {
        tool_version: TOOL_VERSION.to_string(),
        config: cfg.clone(),
        dataset: DatasetSummary {
            rows: ds.len(),
            rows_dropped: load.rows_dropped,
            num_features: ds.num_features(),
            class_names: ds.class_names.clone(),
        },
        aggregates: aggregate(&labels, &records),
        records,
        resources: kernel_resources(cfg, width).map_err(|e| e.in_stage("resources"))?,
    })
}
