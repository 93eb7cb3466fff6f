//! Soft-margin C-SVM on a precomputed kernel, trained with SMO.
//!
//! Working pairs are chosen by maximal violation with second-order selection
//! of the partner index, so every step strictly improves the dual and the
//! solver stops exactly when the KKT gap drops below `tol`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const TAU: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SvmParams {
    #[serde(default = "default_c")]
    pub c: f64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
}

fn default_c() -> f64 {
    1.0
}

fn default_tol() -> f64 {
    1e-3
}

fn default_max_iter() -> usize {
    1_000_000
}

impl Default for SvmParams {
    fn default() -> Self {
        Self {
            c: default_c(),
            tol: default_tol(),
            max_iter: default_max_iter(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmModel {
    /// Multipliers `α_i`, each in `[0, C]`.
    pub alphas: Vec<f64>,
    /// `α_i y_i`; zero outside the support set.
    pub dual_coefs: Vec<f64>,
    pub bias: f64,
    pub support_indices: Vec<usize>,
    pub params: SvmParams,
    pub iterations: usize,
    /// Dual objective `Σα - ½ αᵀQα` at exit.
    pub objective: f64,
    /// Identifiers of the training rows, in kernel column order.
    #[serde(default)]
    pub train_refs: Vec<String>,
}

/// `Σα - ½ Σ α_i α_j y_i y_j K_ij`
pub fn dual_objective(kernel: &DMatrix<f64>, labels: &[i8], alphas: &[f64]) -> f64 {
    let m = alphas.len();
    let mut quad = 0.0;
    for i in 0..m {
        for j in 0..m {
            quad += alphas[i] * alphas[j] * f64::from(labels[i]) * f64::from(labels[j]) * kernel[(i, j)];
        }
    }
    alphas.iter().sum::<f64>() - 0.5 * quad
}

fn validate(kernel: &DMatrix<f64>, labels: &[i8], params: &SvmParams) -> Result<()> {
    if !kernel.is_square() {
        return Err(Error::DimensionMismatch {
            expected: kernel.nrows(),
            got: kernel.ncols(),
        });
    }
    if kernel.nrows() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: kernel.nrows(),
            got: labels.len(),
        });
    }
    if let Some(l) = labels.iter().find(|&&l| l != 1 && l != -1) {
        return Err(Error::InvalidArgument(format!("label {l} is not ±1")));
    }
    if !labels.contains(&1) || !labels.contains(&-1) {
        return Err(Error::InvalidArgument("training labels contain a single class".into()));
    }
    if !(params.c > 0.0 && params.c.is_finite()) {
        return Err(Error::InvalidArgument(format!("C = {} must be positive", params.c)));
    }
    if !(params.tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tol = {} must be positive", params.tol)));
    }
    if kernel.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("kernel entry".into()));
    }
    Ok(())
}

pub fn svm_train(kernel: &DMatrix<f64>, labels: &[i8], params: &SvmParams) -> Result<SvmModel> {
    train_inner(kernel, labels, params, None)
}

/// As [`svm_train`], also returning the dual objective after every update.
pub fn svm_train_traced(kernel: &DMatrix<f64>, labels: &[i8], params: &SvmParams) -> Result<(SvmModel, Vec<f64>)> {
    let mut trace = Vec::new();
    let model = train_inner(kernel, labels, params, Some(&mut trace))?;
    Ok((model, trace))
}

fn train_inner(
    kernel: &DMatrix<f64>,
    labels: &[i8],
    params: &SvmParams,
    mut trace: Option<&mut Vec<f64>>,
) -> Result<SvmModel> {
    validate(kernel, labels, params)?;
    let m = labels.len();
    let c = params.c;
    let y: Vec<f64> = labels.iter().map(|&l| f64::from(l)).collect();
    let q = |i: usize, j: usize| y[i] * y[j] * kernel[(i, j)];

    let mut alpha = vec![0.0; m];
    // gradient of ½αᵀQα - eᵀα
    let mut grad = vec![-1.0; m];
    let mut iterations = 0;

    let at_upper = |a: f64| a >= c;
    let at_lower = |a: f64| a <= 0.0;

    loop {
        // i: maximal violator in I_up
        let mut g_max = f64::NEG_INFINITY;
        let mut i_sel = None;
        for t in 0..m {
            let v = -y[t] * grad[t];
            let in_up = if y[t] > 0.0 { !at_upper(alpha[t]) } else { !at_lower(alpha[t]) };
            if in_up && v >= g_max {
                g_max = v;
                i_sel = Some(t);
            }
        }
        // j: second-order choice in I_low
        let mut g_max2 = f64::NEG_INFINITY;
        let mut j_sel = None;
        let mut best = f64::INFINITY;
        if let Some(i) = i_sel {
            for t in 0..m {
                let in_low = if y[t] > 0.0 { !at_lower(alpha[t]) } else { !at_upper(alpha[t]) };
                if !in_low {
                    continue;
                }
                let v = y[t] * grad[t];
                g_max2 = g_max2.max(v);
                let diff = g_max + v;
                if diff > 0.0 {
                    let a = kernel[(i, i)] + kernel[(t, t)] - 2.0 * kernel[(i, t)];
                    let obj = -(diff * diff) / if a > 0.0 { a } else { TAU };
                    if obj <= best {
                        best = obj;
                        j_sel = Some(t);
                    }
                }
            }
        }
        let gap = g_max + g_max2;
        let (i, j) = match (i_sel, j_sel) {
            (Some(i), Some(j)) if gap >= params.tol => (i, j),
            _ => break,
        };
        if iterations >= params.max_iter {
            return Err(Error::NonConvergence {
                iterations,
                violation: gap,
            });
        }
        iterations += 1;

        let (old_i, old_j) = (alpha[i], alpha[j]);
        if y[i] != y[j] {
            let a = (kernel[(i, i)] + kernel[(j, j)] - 2.0 * kernel[(i, j)]).max(TAU);
            let delta = (-grad[i] - grad[j]) / a;
            let diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if diff > 0.0 {
                if alpha[j] < 0.0 {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if diff > 0.0 {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = c - diff;
                }
            } else if alpha[j] > c {
                alpha[j] = c;
                alpha[i] = c + diff;
            }
        } else {
            let a = (kernel[(i, i)] + kernel[(j, j)] - 2.0 * kernel[(i, j)]).max(TAU);
            let delta = (grad[i] - grad[j]) / a;
            let sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if sum > c {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = sum - c;
                }
            } else if alpha[j] < 0.0 {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if sum > c {
                if alpha[j] > c {
                    alpha[j] = c;
                    alpha[i] = sum - c;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }

        let (di, dj) = (alpha[i] - old_i, alpha[j] - old_j);
        for (t, g) in grad.iter_mut().enumerate() {
            *g += q(i, t) * di + q(j, t) * dj;
        }
        if let Some(tr) = trace.as_deref_mut() {
            // ½αᵀQα - eᵀα = ½ Σ α_t (G_t - 1); dual objective is its negation
            let primal: f64 = alpha.iter().zip(&grad).map(|(a, g)| a * (g - 1.0)).sum::<f64>() / 2.0;
            tr.push(-primal);
        }
    }

    // bias from free multipliers, else midpoint of the feasible interval
    let mut upper = f64::INFINITY;
    let mut lower = f64::NEG_INFINITY;
    let mut free_sum = 0.0;
    let mut free = 0usize;
    for t in 0..m {
        let yg = y[t] * grad[t];
        if at_upper(alpha[t]) {
            if y[t] < 0.0 {
                upper = upper.min(yg);
            } else {
                lower = lower.max(yg);
            }
        } else if at_lower(alpha[t]) {
            if y[t] > 0.0 {
                upper = upper.min(yg);
            } else {
                lower = lower.max(yg);
            }
        } else {
            free += 1;
            free_sum += yg;
        }
    }
    let rho = if free > 0 {
        free_sum / free as f64
    } else {
        (upper + lower) / 2.0
    };

    let dual_coefs: Vec<f64> = alpha.iter().zip(&y).map(|(a, y)| a * y).collect();
    let support_indices = (0..m).filter(|&t| alpha[t] > 0.0).collect();
    let objective = dual_objective(kernel, labels, &alpha);
    Ok(SvmModel {
        alphas: alpha,
        dual_coefs,
        bias: -rho,
        support_indices,
        params: *params,
        iterations,
        objective,
        train_refs: Vec::new(),
    })
}

impl SvmModel {
    pub fn with_train_refs(mut self, refs: Vec<String>) -> Self {
        self.train_refs = refs;
        self
    }

    /// `f(z) = Σ_i dual_coefs_i · k(z, x_i) + bias` for each row of `cross`
    /// (rows: samples to score, columns: training rows).
    pub fn decision_function(&self, cross: &DMatrix<f64>) -> Result<Vec<f64>> {
        if cross.ncols() != self.dual_coefs.len() {
            return Err(Error::DimensionMismatch {
                expected: self.dual_coefs.len(),
                got: cross.ncols(),
            });
        }
        Ok((0..cross.nrows())
            .map(|r| {
                self.support_indices
                    .iter()
                    .map(|&s| self.dual_coefs[s] * cross[(r, s)])
                    .sum::<f64>()
                    + self.bias
            })
            .collect())
    }
}

/// Signs of the decision values; an exact zero maps to `+1`.
pub fn svm_predict(model: &SvmModel, cross: &DMatrix<f64>) -> Result<Vec<i8>> {
    Ok(model
        .decision_function(cross)?
        .into_iter()
        .map(|v| if v >= 0.0 { 1 } else { -1 })
        .collect())
}
