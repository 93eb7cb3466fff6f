//! Feature-map circuit builders and resource accounting.

mod capacity;
mod cp;
mod pauli;
mod resources;

use serde::{Deserialize, Serialize};

pub use capacity::{capacity, meta_fibonacci, qubits_required};
pub use cp::{build_cp_map, plan_cp_layers, Angles, CpMapParams, Layer, LayerPlan};
pub use pauli::{build_z_map, build_zz_map, Entanglement, ZzMapConfig};
pub use resources::{resource_report, ResourceReport};

use crate::error::{Error, Result};
use crate::sim::Circuit;

/// Anything that turns a feature vector into a state-preparation circuit.
pub trait FeatureMap: Sync {
    fn build(&self, x: &[f64]) -> Result<Circuit>;

    /// Register size used for `num_features` inputs.
    fn num_qubits(&self, num_features: usize) -> Result<usize>;
}

/// The three supported maps, in config form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MapSpec {
    Z {
        #[serde(default = "one")]
        reps: usize,
    },
    Zz(ZzMapConfig),
    Cp(CpMapParams),
}

fn one() -> usize {
    1
}

impl MapSpec {
    pub fn name(&self) -> &'static str {
        match self {
            MapSpec::Z { .. } => "z",
            MapSpec::Zz(_) => "zz",
            MapSpec::Cp(_) => "cp",
        }
    }

    pub fn reps(&self) -> usize {
        match self {
            MapSpec::Z { reps } => *reps,
            MapSpec::Zz(c) => c.reps,
            MapSpec::Cp(p) => p.reps,
        }
    }
}

impl FeatureMap for MapSpec {
    fn build(&self, x: &[f64]) -> Result<Circuit> {
        match self {
            MapSpec::Z { reps } => build_z_map(x, *reps),
            MapSpec::Zz(cfg) => build_zz_map(x, cfg),
            MapSpec::Cp(params) => build_cp_map(x, params),
        }
    }

    fn num_qubits(&self, num_features: usize) -> Result<usize> {
        match self {
            MapSpec::Cp(_) => qubits_required(num_features),
            _ if num_features == 0 => Err(Error::InvalidArgument("zero features".into())),
            _ => Ok(num_features),
        }
    }
}

pub(crate) fn check_features(x: &[f64], min_len: usize) -> Result<()> {
    if x.len() < min_len {
        return Err(Error::InvalidArgument(format!(
            "feature vector has {} entries, need at least {min_len}",
            x.len()
        )));
    }
    if let Some(v) = x.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("feature value {v}")));
    }
    Ok(())
}
