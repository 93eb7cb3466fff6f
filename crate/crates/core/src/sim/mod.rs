//! Dense state-vector simulation with an optional Monte-Carlo noise mode.

mod circuit;
mod counts;
pub mod gate;
mod noise;
mod state;

pub use circuit::{simulate, Circuit, MAX_CIRCUIT_QUBITS};
pub use counts::{shannon_entropy, OutcomeCounts};
pub use gate::{n_decomposition, n_matrix, phase_distance, GateOp, Matrix2, Matrix4};
pub use noise::{simulate_noisy, NoiseModel};
pub use state::{inner_product, QuantumState, MAX_QUBITS};
