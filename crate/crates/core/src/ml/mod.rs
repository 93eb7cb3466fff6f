//! Classical side of the pipeline: scaling, PCA, SVM, metrics, statistics.

mod classical;
mod metrics;
mod pca;
mod preprocess;
mod stats;
mod svm;

pub use classical::ClassicalKernel;
pub use metrics::{compute_metrics, confusion, ConfusionCounts, Metrics, METRIC_NAMES};
pub use pca::{pca_fit, pca_transform, PcaModel};
pub use preprocess::{scale_to_angles, standardize_fit_transform, AngleScaler, Standardizer};
pub use stats::{mean_std, paired_t_test, summarize_runs, RunSummary, TTestResult};
pub use svm::{dual_objective, svm_predict, svm_train, svm_train_traced, SvmModel, SvmParams};
