//! Pauli-trajectory noise: depolarizing errors after gates, bit flips at readout.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::state::{BornSampler, CompiledOp};
use super::{simulate, Circuit, GateOp, OutcomeCounts, QuantumState, MAX_QUBITS};
use crate::error::{Error, Result};

/// Error probabilities. `p1` follows every single-qubit gate, `p2` every
/// two-qubit gate, `readout_flip` is an independent per-bit flip at measurement.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct NoiseModel {
    #[serde(default)]
    pub p1: f64,
    #[serde(default)]
    pub p2: f64,
    #[serde(default)]
    pub readout_flip: f64,
}

impl NoiseModel {
    pub fn new(p1: f64, p2: f64, readout_flip: f64) -> Result<Self> {
        let m = Self {
            p1,
            p2,
            readout_flip,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn noiseless() -> Self {
        Self::default()
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("p1", self.p1),
            ("p2", self.p2),
            ("readout_flip", self.readout_flip),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidProbability { name, value });
            }
        }
        Ok(())
    }

    pub fn is_noiseless(&self) -> bool {
        self.p1 == 0.0 && self.p2 == 0.0 && self.readout_flip == 0.0
    }
}

/// One Pauli error: the gate it follows and its Pauli code.
/// Single-qubit codes are 1..4 (X, Y, Z); two-qubit codes are `4*a + b` in 1..16
/// with `a` acting on the first operand and `b` on the second.
type Fault = (u32, u8);

// Keeps prefix states only while they fit in this many amplitudes.
const PREFIX_CACHE_AMPLITUDES: usize = 1 << 22;

/// Shot-by-shot noisy sampling of `circuit`.
///
/// `TwoQubitN` gates are expanded to their native 3-CNOT form first, so `p2`
/// applies after each CNOT. With an all-zero model this returns exactly
/// `simulate(circuit)?.sample_counts(shots, seed)`.
pub fn simulate_noisy(
    circuit: &Circuit,
    noise: &NoiseModel,
    shots: u64,
    seed: u64,
) -> Result<OutcomeCounts> {
    noise.validate()?;
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be >= 1".into()));
    }
    if noise.is_noiseless() {
        return simulate(circuit)?.sample_counts(shots, seed);
    }
    if circuit.num_qubits() > MAX_QUBITS {
        return Err(Error::InvalidArgument(format!(
            "cannot simulate {} qubits (limit {MAX_QUBITS})",
            circuit.num_qubits()
        )));
    }

    let native = circuit.to_native();
    let ops = native.ops();
    let (single, double): (Vec<u32>, Vec<u32>) = {
        let mut s = Vec::new();
        let mut d = Vec::new();
        for (k, op) in ops.iter().enumerate() {
            if op.is_two_qubit() {
                d.push(k as u32);
            } else {
                s.push(k as u32);
            }
        }
        (s, d)
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut patterns: BTreeMap<Vec<Fault>, u64> = BTreeMap::new();
    let mut scratch = Vec::new();
    for _ in 0..shots {
        scratch.clear();
        draw_faults(&mut rng, noise.p1, &single, 3, &mut scratch);
        draw_faults(&mut rng, noise.p2, &double, 15, &mut scratch);
        scratch.sort_unstable();
        *patterns.entry(scratch.clone()).or_insert(0) += 1;
    }

    let n = native.num_qubits();
    let compiled: Vec<CompiledOp> = ops.iter().map(CompiledOp::new).collect();
    let prefixes = if ops.len().saturating_mul(1 << n) <= PREFIX_CACHE_AMPLITUDES {
        Some(prefix_states(n, &compiled)?)
    } else {
        None
    };

    let mut counts = OutcomeCounts::new(n);
    for (faults, times) in &patterns {
        let state = match (&prefixes, faults.first()) {
            (Some(p), Some(&(first, _))) => {
                let mut s = p[first as usize].clone();
                run_faulty(&mut s, ops, &compiled, first as usize, true, faults);
                s
            }
            (Some(p), None) => p.last().expect("at least one prefix").clone(),
            (None, _) => {
                let mut s = QuantumState::zero(n)?;
                run_faulty(&mut s, ops, &compiled, 0, false, faults);
                s
            }
        };
        let sampler = BornSampler::new(&state);
        for _ in 0..*times {
            let mut outcome = sampler.draw(&mut rng);
            if noise.readout_flip > 0.0 {
                for q in 0..n {
                    if rng.random::<f64>() < noise.readout_flip {
                        outcome ^= 1 << q;
                    }
                }
            }
            counts.record(outcome, 1);
        }
    }
    Ok(counts)
}

/// Appends faults on `sites` using geometric gaps between error events.
fn draw_faults<R: Rng>(rng: &mut R, p: f64, sites: &[u32], kinds: u8, out: &mut Vec<Fault>) {
    if p <= 0.0 || sites.is_empty() {
        return;
    }
    let log_q = (1.0 - p).ln();
    let mut pos: usize = 0;
    loop {
        let gap = if p >= 1.0 {
            0
        } else {
            // failures before the next success; u in (0, 1]
            let u = 1.0 - rng.random::<f64>();
            let g = (u.ln() / log_q).floor();
            if g >= sites.len() as f64 {
                break;
            }
            g as usize
        };
        pos += gap;
        if pos >= sites.len() {
            break;
        }
        let code = rng.random_range(1..=kinds);
        out.push((sites[pos], code));
        pos += 1;
    }
}

/// `states[k]` is the noiseless state after gates `0..=k`.
fn prefix_states(num_qubits: usize, ops: &[CompiledOp]) -> Result<Vec<QuantumState>> {
    let mut s = QuantumState::zero(num_qubits)?;
    let mut out = Vec::with_capacity(ops.len().max(1));
    for op in ops {
        op.apply(&mut s);
        out.push(s.clone());
    }
    if out.is_empty() {
        out.push(s);
    }
    Ok(out)
}

/// Runs gates `start..` and their faults. With `start_applied` the gate at
/// `start` is already reflected in `state` (prefix-cache resume).
fn run_faulty(
    state: &mut QuantumState,
    ops: &[GateOp],
    compiled: &[CompiledOp],
    start: usize,
    start_applied: bool,
    faults: &[Fault],
) {
    let mut next = faults.partition_point(|f| (f.0 as usize) < start);
    for (k, (op, c)) in ops.iter().zip(compiled).enumerate().skip(start) {
        if !(start_applied && k == start) {
            c.apply(state);
        }
        while next < faults.len() && faults[next].0 as usize == k {
            apply_fault(state, op, faults[next].1);
            next += 1;
        }
    }
}

fn apply_fault(state: &mut QuantumState, op: &GateOp, code: u8) {
    let qs = op.qubits();
    if qs.len() == 1 {
        state.apply_pauli(qs[0], code);
    } else {
        state.apply_pauli(qs[0], code / 4);
        state.apply_pauli(qs[1], code % 4);
    }
}
