//! Binary classification metrics with `+1` as the positive class.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub tp: u64,
    pub tn: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

impl ConfusionCounts {
    pub fn total(&self) -> u64 {
        self.tp + self.tn + self.fp + self.fn_
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Metrics {
    pub mcc: f64,
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl Metrics {
    pub fn get(&self, name: &str) -> Option<f64> {
        match name {
            "mcc" => Some(self.mcc),
            "accuracy" => Some(self.accuracy),
            "precision" => Some(self.precision),
            "recall" => Some(self.recall),
            "f1" => Some(self.f1),
            _ => None,
        }
    }
}

pub const METRIC_NAMES: [&str; 5] = ["mcc", "accuracy", "precision", "recall", "f1"];

pub fn confusion(y_true: &[i8], y_pred: &[i8]) -> Result<ConfusionCounts> {
    if y_true.len() != y_pred.len() {
        return Err(Error::DimensionMismatch {
            expected: y_true.len(),
            got: y_pred.len(),
        });
    }
    let mut c = ConfusionCounts::default();
    for (&t, &p) in y_true.iter().zip(y_pred) {
        match (t, p) {
            (1, 1) => c.tp += 1,
            (-1, -1) => c.tn += 1,
            (-1, 1) => c.fp += 1,
            (1, -1) => c.fn_ += 1,
            _ => return Err(Error::InvalidArgument(format!("labels ({t}, {p}) are not ±1"))),
        }
    }
    Ok(c)
}

fn ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// MCC is 0 whenever any factor of its denominator vanishes; other 0/0 ratios are 0.
pub fn compute_metrics(c: &ConfusionCounts) -> Metrics {
    let (tp, tn, fp, fn_) = (c.tp as f64, c.tn as f64, c.fp as f64, c.fn_ as f64);
    let den = (tp + fp) * (tp + fn_) * (tn + fp) * (tn + fn_);
    let mcc = if den == 0.0 {
        0.0
    } else {
        ((tp * tn - fp * fn_) / den.sqrt()).clamp(-1.0, 1.0)
    };
    let precision = ratio(tp, tp + fp);
    let recall = ratio(tp, tp + fn_);
    Metrics {
        mcc,
        accuracy: ratio(tp + tn, tp + tn + fp + fn_),
        precision,
        recall,
        f1: ratio(2.0 * precision * recall, precision + recall),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(tp: u64, tn: u64, fp: u64, fn_: u64) -> ConfusionCounts {
        ConfusionCounts { tp, tn, fp, fn_ }
    }

    #[test]
    fn perfect_prediction() {
        let m = compute_metrics(&counts(10, 7, 0, 0));
        assert_eq!(m.mcc, 1.0);
        assert_eq!(m.accuracy, 1.0);
        assert_eq!(m.f1, 1.0);
    }

    #[test]
    fn balanced_noise() {
        let m = compute_metrics(&counts(5, 5, 5, 5));
        assert_eq!(m.mcc, 0.0);
        assert_eq!(m.accuracy, 0.5);
    }

    #[test]
    fn accuracy_hides_a_useless_classifier() {
        let m = compute_metrics(&counts(90, 0, 5, 5));
        assert!((m.accuracy - 0.9).abs() < 1e-12);
        // (0 - 25) / sqrt(95 * 95 * 5 * 5) = -25 / 475
        assert!((m.mcc + 25.0 / 475.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_denominators() {
        let m = compute_metrics(&counts(0, 10, 0, 0));
        assert_eq!((m.mcc, m.precision, m.recall, m.f1), (0.0, 0.0, 0.0, 0.0));
        assert_eq!(compute_metrics(&ConfusionCounts::default()).accuracy, 0.0);
    }

    #[test]
    fn confusion_from_labels() {
        let c = confusion(&[1, 1, -1, -1, 1], &[1, -1, -1, 1, 1]).unwrap();
        assert_eq!(c, counts(2, 1, 1, 1));
        assert_eq!(c.total(), 5);
        assert!(confusion(&[1], &[1, 1]).is_err());
        assert!(confusion(&[2], &[1]).is_err());
    }
}
