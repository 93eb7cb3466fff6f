//! Dataset loading, synthetic data, splitting and experiment configuration.

mod config;
mod dataset;
mod split;
mod synth;

pub use config::{DatasetSource, ExperimentConfig, KernelChoice, Preprocessing, SplitConfig, SEED_ENV};
pub use dataset::{load_csv, Dataset, LoadReport};
pub use split::{random_split, stratified_split};
pub use synth::{synthesize_gaussian, SyntheticSpec};
