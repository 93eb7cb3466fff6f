//! Convolution/pooling feature map (CPMap).
//!
//! Each layer Z-encodes one feature per active qubit, mixes neighbours with the
//! convolution unitary `C = N(conv)`, then pairs qubits with the pooling
//! unitary `P = N(pool)`. The second qubit of every pool pair carries on to
//! the next layer; the others are partitioned off, and the freed layer budget
//! is spent on fresh features. `n` qubits therefore hold
//! `n + floor(n/2) + … + 1` features.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{check_features, qubits_required};
use crate::error::{Error, Result};
use crate::sim::{Circuit, GateOp};

pub type Angles = (f64, f64, f64);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CpMapParams {
    #[serde(default = "default_conv")]
    pub conv_angles: Angles,
    #[serde(default = "default_pool")]
    pub pool_angles: Angles,
    #[serde(default = "default_reps")]
    pub reps: usize,
}

fn default_conv() -> Angles {
    (PI / 2.0, PI / 4.0, PI / 8.0)
}

fn default_pool() -> Angles {
    (PI / 3.0, PI / 5.0, PI / 7.0)
}

fn default_reps() -> usize {
    1
}

impl Default for CpMapParams {
    fn default() -> Self {
        Self {
            conv_angles: default_conv(),
            pool_angles: default_pool(),
            reps: default_reps(),
        }
    }
}

impl CpMapParams {
    pub fn with_reps(reps: usize) -> Self {
        Self {
            reps,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::InvalidArgument("CPMap reps must be >= 1".into()));
        }
        let (a, b, c) = self.conv_angles;
        let (d, e, f) = self.pool_angles;
        if [a, b, c, d, e, f].iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("CPMap angles".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Layer {
    pub active_qubits: Vec<usize>,
    /// Feature indices; `features_assigned[i]` is encoded on `active_qubits[i]`.
    pub features_assigned: Vec<usize>,
    pub conv_pairs: Vec<(usize, usize)>,
    pub pool_pairs: Vec<(usize, usize)>,
    pub kept_qubits: Vec<usize>,
    pub retired_qubits: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerPlan {
    pub num_qubits: usize,
    pub num_features: usize,
    pub layers: Vec<Layer>,
}

/// Layer schedule for `features` inputs.
///
/// Convolution pairs follow a two-round brick pattern: `(Q0,Q1), (Q2,Q3), …`
/// then `(Q1,Q2), (Q3,Q4), …`, closed by `(Q[k-1], Q0)` when `k >= 4` is even,
/// which gives `k` convolutions on an even layer of `k >= 4`. Only layers that
/// hand qubits to a further layer get convolution and pooling.
pub fn plan_cp_layers(features: usize) -> Result<LayerPlan> {
    let n = qubits_required(features)?;
    let mut active: Vec<usize> = (0..n).collect();
    let mut next_feature = 0;
    let mut layers = Vec::new();

    loop {
        let k = active.len();
        let take = k.min(features - next_feature);
        let features_assigned: Vec<usize> = (next_feature..next_feature + take).collect();
        next_feature += take;

        if next_feature == features || k == 1 {
            layers.push(Layer {
                active_qubits: active,
                features_assigned,
                conv_pairs: Vec::new(),
                pool_pairs: Vec::new(),
                kept_qubits: Vec::new(),
                retired_qubits: Vec::new(),
            });
            break;
        }

        let mut conv_pairs: Vec<(usize, usize)> = active.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        conv_pairs.extend(active[1..].chunks_exact(2).map(|p| (p[0], p[1])));
        if k >= 4 && k % 2 == 0 {
            conv_pairs.push((active[k - 1], active[0]));
        }
        let pool_pairs: Vec<(usize, usize)> = active.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        let kept_qubits: Vec<usize> = pool_pairs.iter().map(|p| p.1).collect();
        let retired_qubits: Vec<usize> = active
            .iter()
            .copied()
            .filter(|q| !kept_qubits.contains(q))
            .collect();

        layers.push(Layer {
            active_qubits: active,
            features_assigned,
            conv_pairs,
            pool_pairs,
            kept_qubits: kept_qubits.clone(),
            retired_qubits,
        });
        active = kept_qubits;
    }

    // capacity(n) >= features guarantees every feature found a qubit
    debug_assert_eq!(next_feature, features);
    Ok(LayerPlan {
        num_qubits: n,
        num_features: features,
        layers,
    })
}

pub fn build_cp_map(x: &[f64], params: &CpMapParams) -> Result<Circuit> {
    check_features(x, 1)?;
    params.validate()?;
    let plan = plan_cp_layers(x.len())?;
    let mut ops = Vec::new();
    for _ in 0..params.reps {
        for layer in &plan.layers {
            for (&q, &f) in layer.active_qubits.iter().zip(&layer.features_assigned) {
                ops.push(GateOp::h(q));
                ops.push(GateOp::rz(q, 2.0 * x[f]));
            }
            ops.extend(layer.conv_pairs.iter().map(|&(a, b)| GateOp::n(a, b, params.conv_angles)));
            ops.extend(layer.pool_pairs.iter().map(|&(a, b)| GateOp::n(a, b, params.pool_angles)));
        }
    }
    Circuit::new(plan.num_qubits, ops)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::resource_report;

    fn sizes(plan: &LayerPlan) -> Vec<usize> {
        plan.layers.iter().map(|l| l.active_qubits.len()).collect()
    }

    fn feature_counts(plan: &LayerPlan) -> Vec<usize> {
        plan.layers.iter().map(|l| l.features_assigned.len()).collect()
    }

    #[test]
    fn single_feature_plan() {
        let p = plan_cp_layers(1).unwrap();
        assert_eq!(p.num_qubits, 1);
        assert_eq!(p.layers.len(), 1);
        assert!(p.layers[0].conv_pairs.is_empty() && p.layers[0].pool_pairs.is_empty());
    }

    #[test]
    fn seven_features() {
        let p = plan_cp_layers(7).unwrap();
        assert_eq!(sizes(&p), vec![4, 2, 1]);
        assert_eq!(feature_counts(&p), vec![4, 2, 1]);
        let first = &p.layers[0];
        assert_eq!(first.conv_pairs, vec![(0, 1), (2, 3), (1, 2), (3, 0)]);
        assert_eq!(first.pool_pairs, vec![(0, 1), (2, 3)]);
        assert_eq!(first.kept_qubits, vec![1, 3]);
        assert_eq!(first.retired_qubits, vec![0, 2]);
        assert_eq!(p.layers[1].conv_pairs, vec![(1, 3)]);
        assert_eq!(p.layers[2].active_qubits, vec![3]);
    }

    #[test]
    fn fifteen_features() {
        let p = plan_cp_layers(15).unwrap();
        assert_eq!(sizes(&p), vec![8, 4, 2, 1]);
        assert_eq!(feature_counts(&p), vec![8, 4, 2, 1]);
        assert_eq!(p.layers[0].conv_pairs.len(), 8);
    }

    #[test]
    fn odd_layer_retires_leftover() {
        // 16 features need 9 qubits: 9 -> 4 -> 2 -> 1
        let p = plan_cp_layers(16).unwrap();
        assert_eq!(sizes(&p), vec![9, 4, 2, 1]);
        let l = &p.layers[0];
        assert!(l.retired_qubits.contains(&8));
        assert_eq!(l.kept_qubits.len(), 4);
        // no wrap on odd layers: 4 + 4 brick pairs
        assert_eq!(l.conv_pairs.len(), 8);
    }

    #[test]
    fn plan_invariants_hold() {
        for f in 1..=64 {
            let p = plan_cp_layers(f).unwrap();
            let mut seen = vec![0; f];
            for w in p.layers.windows(2) {
                assert_eq!(w[1].active_qubits, w[0].kept_qubits);
            }
            for l in &p.layers {
                for &i in &l.features_assigned {
                    seen[i] += 1;
                }
                if !l.pool_pairs.is_empty() {
                    assert_eq!(l.kept_qubits.len(), l.active_qubits.len() / 2);
                }
            }
            assert!(seen.iter().all(|&c| c == 1), "{f} features");
        }
    }

    #[test]
    fn single_feature_circuit() {
        let c = build_cp_map(&[0.3], &CpMapParams::default()).unwrap();
        assert_eq!(c.ops(), &[GateOp::h(0), GateOp::rz(0, 0.6)]);
    }

    #[test]
    fn seven_feature_cnots() {
        let x = [0.1; 7];
        let one = resource_report(&build_cp_map(&x, &CpMapParams::with_reps(1)).unwrap());
        let two = resource_report(&build_cp_map(&x, &CpMapParams::with_reps(2)).unwrap());
        // layer 1: 4 conv + 2 pool, layer 2: 1 conv + 1 pool -> 8 N gates
        assert_eq!(one.cnot_count, 24);
        assert!(one.cnot_count <= 36);
        assert_eq!(two.cnot_count, 2 * one.cnot_count);
        assert_eq!(one.num_qubits, 4);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(build_cp_map(&[], &CpMapParams::default()).is_err());
        assert!(build_cp_map(&[0.1], &CpMapParams::with_reps(0)).is_err());
        assert!(build_cp_map(&[f64::NAN], &CpMapParams::default()).is_err());
        assert!(plan_cp_layers(0).is_err());
    }
}
