use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::Dataset;
use crate::error::{Error, Result};

/// Two isotropic unit-variance Gaussian classes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub num_samples: usize,
    pub num_features: usize,
    /// Distance between class means in units of the per-feature std.
    pub separation: f64,
    #[serde(default)]
    pub seed: u64,
}

/// Class means sit at `±(separation / 2) · u` for a random unit vector `u`.
/// Rows alternate `+1, -1, …`, so classes are balanced (`+1` gets the odd row).
pub fn synthesize_gaussian(spec: &SyntheticSpec) -> Result<Dataset> {
    if spec.num_samples < 2 || spec.num_features == 0 {
        return Err(Error::Config("synthetic data needs >= 2 samples and >= 1 feature".into()));
    }
    if !(spec.separation >= 0.0 && spec.separation.is_finite()) {
        return Err(Error::Config(format!("separation {} must be >= 0", spec.separation)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let d = spec.num_features;
    let mut u: Vec<f64> = (0..d).map(|_| StandardNormal.sample(&mut rng)).collect();
    let norm = u.iter().map(|v| v * v).sum::<f64>().sqrt();
    u.iter_mut().for_each(|v| *v /= norm);

    let half = spec.separation / 2.0;
    let mut features = Vec::with_capacity(spec.num_samples);
    let mut labels = Vec::with_capacity(spec.num_samples);
    for i in 0..spec.num_samples {
        let label: i8 = if i % 2 == 0 { 1 } else { -1 };
        let shift = half * f64::from(label);
        let row: Vec<f64> = u
            .iter()
            .map(|&ui| {
                let z: f64 = StandardNormal.sample(&mut rng);
                shift * ui + z
            })
            .collect();
        features.push(row);
        labels.push(label);
    }
    Ok(Dataset {
        features,
        labels,
        feature_names: (0..d).map(|j| format!("x{j}")).collect(),
        ids: (0..spec.num_samples).map(|i| format!("s{i}")).collect(),
        class_names: ["-1".into(), "+1".into()],
    })
}
