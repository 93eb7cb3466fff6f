use serde::{Deserialize, Serialize};

use crate::sim::Circuit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceReport {
    pub num_qubits: usize,
    pub depth: usize,
    pub cnot_count: usize,
    pub total_gates: usize,
}

/// Counts on the native gate set (every `TwoQubitN` expanded to 3 CNOTs).
/// Depth is the longest chain under greedy per-qubit layering.
pub fn resource_report(circuit: &Circuit) -> ResourceReport {
    let native = circuit.to_native();
    let mut level = vec![0usize; native.num_qubits()];
    let mut cnot_count = 0;
    for op in native.ops() {
        let qs = op.qubits();
        let d = qs.iter().map(|&q| level[q]).max().unwrap_or(0) + 1;
        for q in qs {
            level[q] = d;
        }
        if op.is_two_qubit() {
            cnot_count += 1;
        }
    }
    ResourceReport {
        num_qubits: native.num_qubits(),
        depth: level.into_iter().max().unwrap_or(0),
        cnot_count,
        total_gates: native.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::GateOp;

    #[test]
    fn empty_circuit() {
        let r = resource_report(&Circuit::empty(3).unwrap());
        assert_eq!((r.depth, r.cnot_count, r.total_gates), (0, 0, 0));
    }

    #[test]
    fn bell_circuit() {
        let r = resource_report(&Circuit::new(2, vec![GateOp::h(0), GateOp::cnot(0, 1)]).unwrap());
        assert_eq!((r.depth, r.cnot_count, r.total_gates), (2, 1, 2));
    }

    #[test]
    fn parallel_gates_share_a_layer() {
        let c = Circuit::new(3, vec![GateOp::h(0), GateOp::h(1), GateOp::h(2), GateOp::cnot(0, 1)]).unwrap();
        assert_eq!(resource_report(&c).depth, 2);
    }

    #[test]
    fn n_gate_expands() {
        let c = Circuit::new(2, vec![GateOp::n(0, 1, (0.1, 0.2, 0.3))]).unwrap();
        let r = resource_report(&c);
        assert_eq!(r.cnot_count, 3);
        assert_eq!(r.total_gates, 8);
        assert!(r.depth <= r.total_gates);
    }
}
