use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Binary-labelled feature matrix. Labels are `±1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub features: Vec<Vec<f64>>,
    pub labels: Vec<i8>,
    pub feature_names: Vec<String>,
    /// Stable row identifiers (CSV data-row number or synthetic index).
    pub ids: Vec<String>,
    /// Original class names mapped to `-1` and `+1`, in that order.
    pub class_names: [String; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoadReport {
    pub rows_read: usize,
    pub rows_dropped: usize,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn num_features(&self) -> usize {
        self.feature_names.len()
    }

    pub fn class_count(&self, label: i8) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    /// Rows at `indices`, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        Dataset {
            features: indices.iter().map(|&i| self.features[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            feature_names: self.feature_names.clone(),
            ids: indices.iter().map(|&i| self.ids[i].clone()).collect(),
            class_names: self.class_names.clone(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.feature_names.len();
        if self.features.len() != self.labels.len() || self.ids.len() != self.labels.len() {
            return Err(Error::Data("row count mismatch between features, labels and ids".into()));
        }
        for r in &self.features {
            if r.len() != d {
                return Err(Error::Data("ragged feature rows".into()));
            }
            if r.iter().any(|v| !v.is_finite()) {
                return Err(Error::Data("non-finite feature value".into()));
            }
        }
        if self.labels.iter().any(|&l| l != 1 && l != -1) {
            return Err(Error::Data("labels must be ±1".into()));
        }
        Ok(())
    }
}

fn is_missing(cell: &str) -> bool {
    matches!(cell.trim(), "" | "NA" | "NaN" | "nan" | "?")
}

/// Reads a comma-separated file with a header row. `label_column` must hold
/// exactly two distinct values: the lexicographically smaller one becomes
/// `-1`, the other `+1`. Every other column must be numeric. Rows with a
/// missing cell are dropped and counted.
pub fn load_csv(path: &Path, label_column: &str) -> Result<(Dataset, LoadReport)> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => Error::Data(format!("cannot open {}: {e}", path.display())),
            _ => Error::Csv(e),
        })?;
    let headers = rdr.headers()?.clone();
    let label_idx = headers
        .iter()
        .position(|h| h == label_column)
        .ok_or_else(|| Error::Data(format!("label column {label_column:?} not found in {}", path.display())))?;
    let feature_names: Vec<String> = headers
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != label_idx)
        .map(|(_, h)| h.to_string())
        .collect();

    let mut raw_labels = Vec::new();
    let mut features = Vec::new();
    let mut ids = Vec::new();
    let mut rows_read = 0;
    let mut rows_dropped = 0;
    for (row_no, rec) in rdr.records().enumerate() {
        let rec = rec?;
        rows_read += 1;
        if rec.len() != headers.len() {
            return Err(Error::Data(format!(
                "row {} has {} cells, header has {}",
                row_no + 1,
                rec.len(),
                headers.len()
            )));
        }
        if rec.iter().any(is_missing) {
            rows_dropped += 1;
            continue;
        }
        let mut row = Vec::with_capacity(feature_names.len());
        for (i, cell) in rec.iter().enumerate() {
            if i == label_idx {
                continue;
            }
            let v: f64 = cell.parse().map_err(|_| {
                Error::Data(format!(
                    "non-numeric value {cell:?} in column {:?} (row {})",
                    &headers[i],
                    row_no + 1
                ))
            })?;
            if !v.is_finite() {
                return Err(Error::Data(format!("non-finite value in row {}", row_no + 1)));
            }
            row.push(v);
        }
        raw_labels.push(rec[label_idx].to_string());
        features.push(row);
        ids.push((row_no + 1).to_string());
    }

    let classes: BTreeSet<&str> = raw_labels.iter().map(String::as_str).collect();
    if classes.len() != 2 {
        return Err(Error::NotBinary(classes.len()));
    }
    let mut it = classes.into_iter();
    let neg = it.next().expect("two classes").to_string();
    let pos = it.next().expect("two classes").to_string();
    let labels = raw_labels.iter().map(|l| if *l == neg { -1 } else { 1 }).collect();

    let ds = Dataset {
        features,
        labels,
        feature_names,
        ids,
        class_names: [neg, pos],
    };
    Ok((ds, LoadReport { rows_read, rows_dropped }))
}
