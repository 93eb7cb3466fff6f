//! Independent reference implementations shared by the integration suites.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};

/// Exhaustive active-set solve of the C-SVM dual
/// `max Σα − ½ αᵀQα` with `Q_ij = y_i y_j K_ij`, `yᵀα = 0`, `0 ≤ α ≤ C`.
/// Every free/lower/upper assignment is tried; the best feasible stationary
/// point is returned as `(objective, alphas)`.
pub fn qp_oracle(k: &DMatrix<f64>, y: &[i8], c: f64) -> (f64, Vec<f64>) {
    let m = y.len();
    assert!(m <= 8, "exhaustive oracle is exponential");
    let yf: Vec<f64> = y.iter().map(|&v| f64::from(v)).collect();
    let q = DMatrix::from_fn(m, m, |i, j| yf[i] * yf[j] * k[(i, j)]);
    let objective = |a: &[f64]| {
        let av = DVector::from_column_slice(a);
        av.sum() - 0.5 * (av.transpose() * &q * &av)[(0, 0)]
    };
    let mut best = (f64::NEG_INFINITY, vec![0.0; m]);
    for code in 0..3usize.pow(m as u32) {
        // 0 = at zero, 1 = at C, 2 = free
        let state: Vec<usize> = (0..m).map(|i| (code / 3usize.pow(i as u32)) % 3).collect();
        let free: Vec<usize> = (0..m).filter(|&i| state[i] == 2).collect();
        let mut alpha: Vec<f64> = state.iter().map(|&s| if s == 1 { c } else { 0.0 }).collect();
        if !free.is_empty() {
            let f = free.len();
            let mut a = DMatrix::zeros(f + 1, f + 1);
            let mut rhs = DVector::zeros(f + 1);
            for (r, &i) in free.iter().enumerate() {
                for (s, &j) in free.iter().enumerate() {
                    a[(r, s)] = q[(i, j)];
                }
                a[(r, f)] = yf[i];
                a[(f, r)] = yf[i];
                let bound: f64 = (0..m).filter(|j| state[*j] != 2).map(|j| q[(i, j)] * alpha[j]).sum();
                rhs[r] = 1.0 - bound;
            }
            rhs[f] = -(0..m).filter(|j| state[*j] != 2).map(|j| yf[j] * alpha[j]).sum::<f64>();
            let svd = a.clone().svd(true, true);
            let Ok(sol) = svd.solve(&rhs, 1e-12) else { continue };
            if (&a * &sol - &rhs).norm() > 1e-9 {
                continue;
            }
            for (r, &i) in free.iter().enumerate() {
                alpha[i] = sol[r];
            }
        }
        let eq: f64 = alpha.iter().zip(&yf).map(|(a, y)| a * y).sum();
        if eq.abs() > 1e-9 || alpha.iter().any(|&a| a < -1e-10 || a > c + 1e-10) {
            continue;
        }
        let f = objective(&alpha);
        if f > best.0 {
            best = (f, alpha);
        }
    }
    best
}

/// Cyclic Jacobi eigenvalues of a symmetric matrix, sorted descending, with
/// eigenvectors as columns in the same order.
pub fn jacobi_eigen(a: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = a.nrows();
    let mut a = a.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].powi(2))
            .sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[(p, q)].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * a[(p, q)]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].partial_cmp(&a[(i, i)]).unwrap());
    let vals = order.iter().map(|&i| a[(i, i)]).collect();
    let vecs = DMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    (vals, vecs)
}

/// Γ(k/2) for positive integers k, by the half-step recursion.
fn gamma_half(k: usize) -> f64 {
    if k == 1 {
        std::f64::consts::PI.sqrt()
    } else if k == 2 {
        1.0
    } else {
        (k as f64 / 2.0 - 1.0) * gamma_half(k - 2)
    }
}

pub fn student_t_pdf(t: f64, dof: usize) -> f64 {
    let v = dof as f64;
    gamma_half(dof + 1) / ((v * std::f64::consts::PI).sqrt() * gamma_half(dof)) * (1.0 + t * t / v).powf(-(v + 1.0) / 2.0)
}

/// Two-sided p-value `1 − 2∫₀^|t| pdf` by composite Simpson quadrature.
pub fn t_two_sided_p(t: f64, dof: usize) -> f64 {
    let n = 20_000;
    let b = t.abs();
    let h = b / n as f64;
    let mut s = student_t_pdf(0.0, dof) + student_t_pdf(b, dof);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * student_t_pdf(i as f64 * h, dof);
    }
    1.0 - 2.0 * s * h / 3.0
}

/// Metrics straight from the textbook formulas, zero where undefined.
pub fn metric_oracle(tp: u64, tn: u64, fp: u64, fn_: u64) -> [f64; 5] {
    let (tp, tn, fp, fn_) = (tp as f64, tn as f64, fp as f64, fn_ as f64);
    let div = |a: f64, b: f64| if b == 0.0 { 0.0 } else { a / b };
    let den = ((tp + fp) * (tp + fn_) * (tn + fp) * (tn + fn_)).sqrt();
    let mcc = div(tp * tn - fp * fn_, den);
    let precision = div(tp, tp + fp);
    let recall = div(tp, tp + fn_);
    [
        mcc,
        div(tp + tn, tp + tn + fp + fn_),
        precision,
        recall,
        div(2.0 * tp, 2.0 * tp + fp + fn_),
    ]
}

/// Bayes-optimal linear error for two unit-variance Gaussians `sep` apart.
pub fn gaussian_bayes_error(sep: f64) -> f64 {
    0.5 * erfc(sep / 2.0 / std::f64::consts::SQRT_2)
}

/// Complementary error function, Chebyshev fit with fractional error < 1.2e-7.
fn erfc(x: f64) -> f64 {
    let z = x.abs();
    let t = 1.0 / (1.0 + 0.5 * z);
    let r = t * (-z * z - 1.265_512_23
        + t * (1.000_023_68
            + t * (0.374_091_96
                + t * (0.096_784_18
                    + t * (-0.186_288_06
                        + t * (0.278_868_07 + t * (-1.135_203_98 + t * (1.488_515_87 + t * (-0.822_152_23 + t * 0.170_872_77)))))))))
        .exp();
    if x >= 0.0 {
        r
    } else {
        2.0 - r
    }
}
