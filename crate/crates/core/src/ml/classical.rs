//! Classical baseline kernels.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `gamma: None` means `1 / d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassicalKernel {
    Linear,
    Poly {
        #[serde(default)]
        gamma: Option<f64>,
        #[serde(default)]
        coef0: f64,
        #[serde(default = "default_degree")]
        degree: u32,
    },
    Rbf {
        #[serde(default)]
        gamma: Option<f64>,
    },
    Sigmoid {
        #[serde(default)]
        gamma: Option<f64>,
        #[serde(default)]
        coef0: f64,
    },
}

fn default_degree() -> u32 {
    3
}

impl ClassicalKernel {
    pub fn name(&self) -> &'static str {
        match self {
            ClassicalKernel::Linear => "linear",
            ClassicalKernel::Poly { .. } => "poly",
            ClassicalKernel::Rbf { .. } => "rbf",
            ClassicalKernel::Sigmoid { .. } => "sigmoid",
        }
    }

    fn gamma(g: Option<f64>, d: usize) -> Result<f64> {
        let g = g.unwrap_or(1.0 / d as f64);
        if g.is_finite() && g > 0.0 {
            Ok(g)
        } else {
            Err(Error::InvalidArgument(format!("kernel gamma {g} must be positive")))
        }
    }

    pub fn eval(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                got: y.len(),
            });
        }
        if x.is_empty() {
            return Err(Error::InvalidArgument("empty feature vectors".into()));
        }
        let d = x.len();
        let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
        Ok(match *self {
            ClassicalKernel::Linear => dot,
            ClassicalKernel::Poly { gamma, coef0, degree } => {
                if degree == 0 {
                    return Err(Error::InvalidArgument("polynomial degree must be >= 1".into()));
                }
                (Self::gamma(gamma, d)? * dot + coef0).powi(degree as i32)
            }
            ClassicalKernel::Rbf { gamma } => {
                let sq: f64 = x.iter().zip(y).map(|(a, b)| (a - b).powi(2)).sum();
                (-Self::gamma(gamma, d)? * sq).exp()
            }
            ClassicalKernel::Sigmoid { gamma, coef0 } => (Self::gamma(gamma, d)? * dot + coef0).tanh(),
        })
    }

    pub fn gram(&self, rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
        self.cross(rows, rows)
    }

    /// `out[(t, r)] = k(test[t], train[r])`.
    pub fn cross(&self, train: &[Vec<f64>], test: &[Vec<f64>]) -> Result<DMatrix<f64>> {
        let mut out = DMatrix::zeros(test.len(), train.len());
        for (t, a) in test.iter().enumerate() {
            for (r, b) in train.iter().enumerate() {
                out[(t, r)] = self.eval(a, b)?;
            }
        }
        Ok(out)
    }
}
