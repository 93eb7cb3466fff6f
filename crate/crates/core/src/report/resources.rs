use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::{resource_report, FeatureMap, MapSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceRow {
    pub features: usize,
    pub qubits: usize,
    pub depth: usize,
    pub cnot_count: usize,
    pub total_gates: usize,
}

/// Accepts `A..B` (inclusive), `A..=B` or a single `A`.
pub fn parse_feature_range(s: &str) -> Result<RangeInclusive<usize>> {
    let bad = || Error::Config(format!("invalid feature range {s:?} (expected A..B with 1 <= A <= B)"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let a = num(s)?;
            (a, a)
        }
    };
    if a == 0 || b < a {
        return Err(bad());
    }
    Ok(a..=b)
}

/// One row per feature count, each circuit built on the all-zero input.
pub fn resource_table(map: &MapSpec, features: RangeInclusive<usize>) -> Result<Vec<ResourceRow>> {
    if *features.start() == 0 || features.is_empty() {
        return Err(Error::Config("feature range must satisfy 1 <= A <= B".into()));
    }
    features
        .map(|f| {
            let c = map.build(&vec![0.0; f])?;
            let r = resource_report(&c);
            Ok(ResourceRow {
                features: f,
                qubits: r.num_qubits,
                depth: r.depth,
                cnot_count: r.cnot_count,
                total_gates: r.total_gates,
            })
        })
        .collect()
}
