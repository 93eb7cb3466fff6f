use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TTestResult {
    pub t_statistic: f64,
    /// Two-sided.
    pub p_value: f64,
    pub dof: usize,
    pub mean_diff: f64,
    pub std_diff: f64,
}

/// Two-sided paired t-test on `a - b`, sample standard deviation.
pub fn paired_t_test(a: &[f64], b: &[f64]) -> Result<TTestResult> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let n = a.len();
    if n < 2 {
        return Err(Error::InvalidArgument("paired t-test needs at least two pairs".into()));
    }
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let (mean, sd) = mean_std(&d);
    if sd == 0.0 || !sd.is_finite() {
        return Err(Error::ZeroVariance);
    }
    let t = mean / (sd / (n as f64).sqrt());
    let dof = n - 1;
    let dist = StudentsT::new(0.0, 1.0, dof as f64).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let p = (2.0 * dist.sf(t.abs())).clamp(0.0, 1.0);
    Ok(TTestResult {
        t_statistic: t,
        p_value: p,
        dof,
        mean_diff: mean,
        std_diff: sd,
    })
}

/// Mean and sample standard deviation (`n - 1` divisor; 0 for a single value).
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub kernel: String,
    pub runs: usize,
    pub mean: f64,
    pub std: f64,
}

/// Per-kernel mean and sample std, one row per kernel in key order.
pub fn summarize_runs(values: &BTreeMap<String, Vec<f64>>) -> Result<Vec<RunSummary>> {
    if values.is_empty() {
        return Err(Error::InvalidArgument("no runs to summarize".into()));
    }
    values
        .iter()
        .map(|(kernel, v)| {
            if v.len() < 2 {
                return Err(Error::InvalidArgument(format!(
                    "kernel {kernel} has {} run(s), need at least 2",
                    v.len()
                )));
            }
            let (mean, std) = mean_std(v);
            Ok(RunSummary {
                kernel: kernel.clone(),
                runs: v.len(),
                mean,
                std,
            })
        })
        .collect()
}
