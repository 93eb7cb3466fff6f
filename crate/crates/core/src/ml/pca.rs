use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::preprocess::check_rectangular;
use crate::error::{Error, Result};

/// Principal axes from the covariance eigendecomposition.
///
/// Each component is sign-fixed so that its largest-magnitude entry is positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaModel {
    pub means: Vec<f64>,
    /// `k` rows of length `d`, orthonormal.
    pub components: Vec<Vec<f64>>,
    /// Covariance eigenvalues (sample covariance, `m - 1` divisor), nonincreasing.
    pub explained_variance: Vec<f64>,
}

pub fn pca_fit(features: &[Vec<f64>], k: usize) -> Result<PcaModel> {
    let d = check_rectangular(features)?;
    let m = features.len();
    if m < 2 {
        return Err(Error::InvalidArgument("PCA needs at least two samples".into()));
    }
    if k == 0 || k > d {
        return Err(Error::InvalidArgument(format!("PCA rank {k} outside 1..={d}")));
    }
    let means: Vec<f64> = (0..d)
        .map(|c| features.iter().map(|r| r[c]).sum::<f64>() / m as f64)
        .collect();
    let centered = DMatrix::from_fn(m, d, |r, c| features[r][c] - means[c]);
    let cov = centered.tr_mul(&centered) / (m as f64 - 1.0);
    let eig = cov.symmetric_eigen();

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let mut components = Vec::with_capacity(k);
    let mut explained_variance = Vec::with_capacity(k);
    for &idx in order.iter().take(k) {
        let mut v: Vec<f64> = eig.eigenvectors.column(idx).iter().copied().collect();
        let pivot = v
            .iter()
            .copied()
            .fold(0.0f64, |best, x| if x.abs() > best.abs() { x } else { best });
        if pivot < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        components.push(v);
        explained_variance.push(eig.eigenvalues[idx].max(0.0));
    }
    Ok(PcaModel {
        means,
        components,
        explained_variance,
    })
}

impl PcaModel {
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
                self.components
                    .iter()
                    .map(|comp| comp.iter().zip(r).zip(&self.means).map(|((w, x), mu)| w * (x - mu)).sum())
                    .collect()
            })
            .collect())
    }
}

pub fn pca_transform(model: &PcaModel, features: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    model.transform(features)
}
