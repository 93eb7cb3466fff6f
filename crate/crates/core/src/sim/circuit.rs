use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gate::GateOp;
use super::state::QuantumState;
use crate::error::{Error, Result};

/// Largest register a circuit may describe; simulation has its own, smaller cap.
pub const MAX_CIRCUIT_QUBITS: usize = 64;

/// Ordered gate list over a fixed register.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    num_qubits: usize,
    ops: Vec<GateOp>,
}

impl Circuit {
    pub fn new(num_qubits: usize, ops: Vec<GateOp>) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_CIRCUIT_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "register size {num_qubits} outside 1..={MAX_CIRCUIT_QUBITS}"
            )));
        }
        for op in &ops {
            op.validate(num_qubits)?;
        }
        Ok(Self { num_qubits, ops })
    }

    pub fn empty(num_qubits: usize) -> Result<Self> {
        Self::new(num_qubits, Vec::new())
    }

    pub fn push(&mut self, op: GateOp) -> Result<()> {
        op.validate(self.num_qubits)?;
        self.ops.push(op);
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// `U†`: reversed order, each gate inverted.
    pub fn inverse(&self) -> Self {
        Self {
            num_qubits: self.num_qubits,
            ops: self.ops.iter().rev().map(GateOp::inverse).collect(),
        }
    }

    /// `other` applied after `self`.
    pub fn then(&self, other: &Circuit) -> Result<Self> {
        if other.num_qubits != self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits,
                got: other.num_qubits,
            });
        }
        let mut ops = self.ops.clone();
        ops.extend_from_slice(&other.ops);
        Ok(Self {
            num_qubits: self.num_qubits,
            ops,
        })
    }

    /// Same unitary with every `TwoQubitN` expanded into its 3-CNOT form.
    pub fn to_native(&self) -> Self {
        Self {
            num_qubits: self.num_qubits,
            ops: self.ops.iter().flat_map(GateOp::to_native).collect(),
        }
    }

    /// Runs the circuit on `initial` in place.
    pub fn apply_to(&self, state: &mut QuantumState) -> Result<()> {
        if state.num_qubits() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits,
                got: state.num_qubits(),
            });
        }
        // ops were validated on construction
        for op in &self.ops {
            state.apply_unchecked(op);
        }
        Ok(())
    }

    /// Dense unitary in simulator index order (column `j` is the image of `|j⟩`).
    /// Intended for small registers.
    pub fn unitary(&self) -> Result<Vec<Vec<Complex64>>> {
        if self.num_qubits > 12 {
            return Err(Error::InvalidArgument(format!(
                "dense unitary of {} qubits is too large",
                self.num_qubits
            )));
        }
        let dim = 1usize << self.num_qubits;
        let mut cols = Vec::with_capacity(dim);
        for j in 0..dim {
            let mut s = QuantumState::basis(self.num_qubits, j)?;
            self.apply_to(&mut s)?;
            cols.push(s.amplitudes().to_vec());
        }
        Ok((0..dim)
            .map(|r| (0..dim).map(|c| cols[c][r]).collect())
            .collect())
    }
}

/// Final state of `circuit` applied to `|0…0⟩`.
pub fn simulate(circuit: &Circuit) -> Result<QuantumState> {
    let mut state = QuantumState::zero(circuit.num_qubits())?;
    circuit.apply_to(&mut state)?;
    Ok(state)
}
