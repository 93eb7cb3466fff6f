//! Column scaling: z-scores before PCA, min-max onto `[0, π]` before encoding.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) fn check_rectangular(features: &[Vec<f64>]) -> Result<usize> {
    let first = features
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty feature matrix".into()))?;
    let d = first.len();
    for r in features {
        if r.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: r.len(),
            });
        }
        if r.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("feature matrix entry".into()));
        }
    }
    Ok(d)
}

/// Per-column mean and population standard deviation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
    /// Columns with zero spread; they map to 0.
    pub constant: Vec<bool>,
}

impl Standardizer {
    pub fn fit(features: &[Vec<f64>]) -> Result<Self> {
        let d = check_rectangular(features)?;
        let m = features.len() as f64;
        let mut means = vec![0.0; d];
        for r in features {
            for (acc, v) in means.iter_mut().zip(r) {
                *acc += v;
            }
        }
        means.iter_mut().for_each(|v| *v /= m);
        let mut stds = vec![0.0; d];
        for r in features {
            for c in 0..d {
                stds[c] += (r[c] - means[c]).powi(2);
            }
        }
        stds.iter_mut().for_each(|v| *v = (*v / m).sqrt());
        let constant = stds.iter().zip(&means).map(|(s, mu)| *s <= 1e-12 * mu.abs().max(1.0)).collect();
        Ok(Self { means, stds, constant })
    }

    pub fn transform(&self, features: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        let d = check_rectangular(features)?;
        if d != self.means.len() {
            return Err(Error::DimensionMismatch {
                expected: self.means.len(),
                got: d,
            });
        }
        Ok(features
            .iter()
            .map(|r| {
                (0..d)
                    .map(|c| {
                        if self.constant[c] {
                            0.0
                        } else {
                            (r[c] - self.means[c]) / self.stds[c]
                        }
                    })
                    .collect()
            })
            .collect())
    }
}

pub fn standardize_fit_transform(features: &[Vec<f64>]) -> Result<(Vec<Vec<f64>>, Standardizer)> {
    let s = Standardizer::fit(features)?;
    Ok((s.transform(features)?, s))
}

/// Min-max map of each column onto `[0, π]`, fitted on training data.
/// Constant columns map to `π/2`; out-of-range values are clamped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleScaler {
    pub mins: Vec<f64>,
    pub maxs: Vec<f64>,
}

impl AngleScaler {
    pub fn fit(features: &[Vec<f64>]) -> Result<Self> {
        let d = check_rectangular(features)?;
        let mut mins = vec![f64::INFINITY; d];
        let mut maxs = vec![f64::NEG_INFINITY; d];
        for r in features {
            for c in 0..d {
                mins[c] = mins[c].min(r[c]);
                maxs[c] = maxs[c].max(r[c]);
            }
        }
        Ok(Self { mins, maxs })
    }

    pub fn transform(&self, features: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        let d = check_rectangular(features)?;
        if d != self.mins.len() {
            return Err(Error::DimensionMismatch {
                expected: self.mins.len(),
                got: d,
            });
        }
        Ok(features
            .iter()
            .map(|r| {
                (0..d)
                    .map(|c| {
                        let span = self.maxs[c] - self.mins[c];
                        if span <= 0.0 {
                            PI / 2.0
                        } else {
                            ((r[c] - self.mins[c]) / span).clamp(0.0, 1.0) * PI
                        }
                    })
                    .collect()
            })
            .collect())
    }
}

pub fn scale_to_angles(train: &[Vec<f64>]) -> Result<(Vec<Vec<f64>>, AngleScaler)> {
    let s = AngleScaler::fit(train)?;
    Ok((s.transform(train)?, s))
}
