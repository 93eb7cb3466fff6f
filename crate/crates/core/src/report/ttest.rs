use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{BenchmarkReport, RunRecord};
use crate::error::{Error, Result};
use crate::ml::{paired_t_test, METRIC_NAMES};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TTestRow {
    pub comparison: String,
    pub metric: String,
    pub t_statistic: f64,
    pub p_value: f64,
    pub dof: usize,
    pub mean_diff: f64,
}

struct Series {
    name: String,
    seeds: Vec<(usize, u64)>,
    records: Vec<RunRecord>,
}

/// Paired t-tests between every pair of kernel series across `reports`, for each
/// metric. Kernel labels are qualified as `label@report` when two reports share
/// a label. All series must cover the same runs with the same split seeds.
pub fn ttest_reports(reports: &[(String, BenchmarkReport)], metrics: &[String]) -> Result<Vec<TTestRow>> {
    if metrics.is_empty() {
        return Err(Error::Config("no metric requested".into()));
    }
    for m in metrics {
        if !METRIC_NAMES.contains(&m.as_str()) {
            return Err(Error::Config(format!("unknown metric {m:?} (expected one of {METRIC_NAMES:?})")));
        }
    }
    let mut label_uses: BTreeMap<String, usize> = BTreeMap::new();
    for (_, r) in reports {
        for k in r.kernels() {
            *label_uses.entry(k).or_default() += 1;
        }
    }
    let mut series = Vec::new();
    for (name, r) in reports {
        for k in r.kernels() {
            let mut records: Vec<_> = r.records_for(&k).cloned().collect();
            records.sort_by_key(|x| x.run);
            series.push(Series {
                name: if label_uses[&k] > 1 { format!("{k}@{name}") } else { k.clone() },
                seeds: records.iter().map(|x| (x.run, x.split_seed)).collect(),
                records,
            });
        }
    }
    if series.len() < 2 {
        return Err(Error::Data("need at least two kernel series to compare".into()));
    }
    for s in &series[1..] {
        if s.seeds != series[0].seeds {
            return Err(Error::Data(format!(
                "mismatched run sets: {} and {} differ in runs or seeds",
                series[0].name, s.name
            )));
        }
    }

    let mut rows = Vec::new();
    for i in 0..series.len() {
        for j in i + 1..series.len() {
            let (a, b) = (&series[i], &series[j]);
            for m in metrics {
                let va: Vec<f64> = a.records.iter().map(|r| r.metrics.get(m).expect("checked")).collect();
                let vb: Vec<f64> = b.records.iter().map(|r| r.metrics.get(m).expect("checked")).collect();
                let t = paired_t_test(&va, &vb).map_err(|e| e.in_stage("ttest"))?;
                rows.push(TTestRow {
                    comparison: format!("{} vs {}", a.name, b.name),
                    metric: m.clone(),
                    t_statistic: t.t_statistic,
                    p_value: t.p_value,
                    dof: t.dof,
                    mean_diff: t.mean_diff,
                });
            }
        }
    }
    Ok(rows)
}

/// Plain-text table: comparison, metric, t, p.
pub fn format_ttest_table(rows: &[TTestRow]) -> String {
    let w = rows.iter().map(|r| r.comparison.len()).max().unwrap_or(0).max("comparison".len());
    let mut out = format!("{:<w$}  {:<9}  {:>10}  {:>10}\n", "comparison", "metric", "t", "p");
    for r in rows {
        out.push_str(&format!(
            "{:<w$}  {:<9}  {:>10.4}  {:>10.4e}\n",
            r.comparison, r.metric, r.t_statistic, r.p_value
        ));
    }
    out
}
