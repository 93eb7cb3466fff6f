//! Pauli-Z and Pauli-ZZ feature maps.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::check_features;
use crate::error::{Error, Result};
use crate::sim::{Circuit, GateOp};

/// Per repetition: `H` on every qubit, then `RZ(2 x_i)` on qubit `i`.
pub fn build_z_map(x: &[f64], reps: usize) -> Result<Circuit> {
    check_features(x, 1)?;
    check_reps(reps)?;
    let n = x.len();
    let mut ops = Vec::with_capacity(2 * n * reps);
    for _ in 0..reps {
        push_z_layer(&mut ops, x);
    }
    Circuit::new(n, ops)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Entanglement {
    #[default]
    Full,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZzMapConfig {
    #[serde(default = "default_zz_reps")]
    pub reps: usize,
    #[serde(default)]
    pub entanglement: Entanglement,
}

fn default_zz_reps() -> usize {
    2
}

impl Default for ZzMapConfig {
    fn default() -> Self {
        Self {
            reps: default_zz_reps(),
            entanglement: Entanglement::Full,
        }
    }
}

impl ZzMapConfig {
    pub fn pairs(&self, n: usize) -> Vec<(usize, usize)> {
        match self.entanglement {
            Entanglement::Full => (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect(),
            Entanglement::Linear => (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
        }
    }
}

/// Per repetition: the Z layer, then for each entangled pair `(i, j)`
/// `CX(i,j) · RZ_j(2 (π - x_i)(π - x_j)) · CX(i,j)`.
pub fn build_zz_map(x: &[f64], cfg: &ZzMapConfig) -> Result<Circuit> {
    check_features(x, 2)?;
    check_reps(cfg.reps)?;
    let n = x.len();
    let pairs = cfg.pairs(n);
    let mut ops = Vec::with_capacity(cfg.reps * (2 * n + 3 * pairs.len()));
    for _ in 0..cfg.reps {
        push_z_layer(&mut ops, x);
        for &(i, j) in &pairs {
            let phi = (PI - x[i]) * (PI - x[j]);
            ops.push(GateOp::cnot(i, j));
            ops.push(GateOp::rz(j, 2.0 * phi));
            ops.push(GateOp::cnot(i, j));
        }
    }
    Circuit::new(n, ops)
}

fn push_z_layer(ops: &mut Vec<GateOp>, x: &[f64]) {
    ops.extend((0..x.len()).map(GateOp::h));
    ops.extend(x.iter().enumerate().map(|(q, &v)| GateOp::rz(q, 2.0 * v)));
}

fn check_reps(reps: usize) -> Result<()> {
    if reps == 0 {
        Err(Error::InvalidArgument("reps must be >= 1".into()))
    } else {
        Ok(())
    }
}
