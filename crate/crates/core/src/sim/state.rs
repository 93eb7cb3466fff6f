use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gate::{GateOp, Matrix2, Matrix4};
use super::OutcomeCounts;
use crate::error::{Error, Result};

/// Largest register the dense simulator accepts (2^26 amplitudes, 1 GiB).
pub const MAX_QUBITS: usize = 26;

/// Dense state vector over `num_qubits` qubits. Qubit 0 is the least-significant bit.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl QuantumState {
    /// `|0…0⟩`
    pub fn zero(num_qubits: usize) -> Result<Self> {
        Self::basis(num_qubits, 0)
    }

    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "register size {num_qubits} outside 1..={MAX_QUBITS}"
            )));
        }
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for {num_qubits} qubits"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Wraps raw amplitudes. The vector must have power-of-two length and unit norm.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "amplitude vector length {len} is not a power of two >= 2"
            )));
        }
        let num_qubits = len.trailing_zeros() as usize;
        if num_qubits > MAX_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "register size {num_qubits} exceeds {MAX_QUBITS}"
            )));
        }
        let state = Self {
            num_qubits,
            amplitudes,
        };
        if (state.norm() - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidArgument(format!(
                "amplitudes have norm {}",
                state.norm()
            )));
        }
        Ok(state)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Born-rule probabilities of the computational basis states.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Applies `gate` in place.
    pub fn apply(&mut self, gate: &GateOp) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.apply_unchecked(gate);
        Ok(())
    }

    /// Consuming form of [`apply`](Self::apply).
    pub fn applied(mut self, gate: &GateOp) -> Result<Self> {
        self.apply(gate)?;
        Ok(self)
    }

    pub(crate) fn apply_unchecked(&mut self, gate: &GateOp) {
        match *gate {
            GateOp::RotZ { qubit, angle } => {
                let lo = Complex64::from_polar(1.0, -angle / 2.0);
                let hi = lo.conj();
                let mask = 1usize << qubit;
                for (i, a) in self.amplitudes.iter_mut().enumerate() {
                    *a *= if i & mask == 0 { lo } else { hi };
                }
            }
            GateOp::Cnot { control, target } => {
                let c = 1usize << control;
                let t = 1usize << target;
                for i in 0..self.amplitudes.len() {
                    if i & c != 0 && i & t == 0 {
                        self.amplitudes.swap(i, i | t);
                    }
                }
            }
            GateOp::Hadamard { qubit } | GateOp::RotY { qubit, .. } => {
                let m = gate.matrix2().expect("single-qubit gate");
                self.apply_matrix2(qubit, &m);
            }
            GateOp::TwoQubitN { q1, q2, .. } => {
                let m = gate.matrix4().expect("two-qubit gate");
                self.apply_matrix4(q1, q2, &m);
            }
        }
    }

    /// Applies the Pauli indexed 0..4 as (I, X, Y, Z) to `qubit`.
    pub(crate) fn apply_pauli(&mut self, qubit: usize, pauli: u8) {
        let mask = 1usize << qubit;
        let i = Complex64::i();
        match pauli {
            0 => {}
            1 => {
                for k in 0..self.amplitudes.len() {
                    if k & mask == 0 {
                        self.amplitudes.swap(k, k | mask);
                    }
                }
            }
            2 => {
                // Y|0> = i|1>, Y|1> = -i|0>
                for k in 0..self.amplitudes.len() {
                    if k & mask == 0 {
                        let a0 = self.amplitudes[k];
                        let a1 = self.amplitudes[k | mask];
                        self.amplitudes[k] = -i * a1;
                        self.amplitudes[k | mask] = i * a0;
                    }
                }
            }
            3 => {
                for (k, a) in self.amplitudes.iter_mut().enumerate() {
                    if k & mask != 0 {
                        *a = -*a;
                    }
                }
            }
            _ => unreachable!("pauli index {pauli}"),
        }
    }

    fn apply_matrix2(&mut self, qubit: usize, m: &Matrix2) {
        let mask = 1usize << qubit;
        for k in 0..self.amplitudes.len() {
            if k & mask == 0 {
                let a0 = self.amplitudes[k];
                let a1 = self.amplitudes[k | mask];
                self.amplitudes[k] = m[0][0] * a0 + m[0][1] * a1;
                self.amplitudes[k | mask] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    fn apply_matrix4(&mut self, q1: usize, q2: usize, m: &Matrix4) {
        let m1 = 1usize << q1;
        let m2 = 1usize << q2;
        for base in 0..self.amplitudes.len() {
            if base & (m1 | m2) != 0 {
                continue;
            }
            // local index = 2 * bit(q1) + bit(q2)
            let idx = [base, base | m2, base | m1, base | m1 | m2];
            let v = idx.map(|k| self.amplitudes[k]);
            for (r, &k) in idx.iter().enumerate() {
                self.amplitudes[k] = m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2] + m[r][3] * v[3];
            }
        }
    }

    /// Draws `shots` computational-basis samples. Deterministic for a fixed seed.
    pub fn sample_counts(&self, shots: u64, seed: u64) -> Result<OutcomeCounts> {
        if shots == 0 {
            return Err(Error::InvalidArgument("shots must be >= 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sampler = BornSampler::new(self);
        let mut counts = OutcomeCounts::new(self.num_qubits);
        for _ in 0..shots {
            counts.record(sampler.draw(&mut rng), 1);
        }
        Ok(counts)
    }
}

/// ⟨a|b⟩, conjugating `a`.
pub fn inner_product(a: &QuantumState, b: &QuantumState) -> Result<Complex64> {
    if a.num_qubits != b.num_qubits {
        return Err(Error::DimensionMismatch {
            expected: a.num_qubits,
            got: b.num_qubits,
        });
    }
    Ok(a.amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// A gate with its matrix evaluated once, for circuits replayed many times.
#[derive(Debug, Clone)]
pub(crate) enum CompiledOp {
    Phase { mask: usize, lo: Complex64, hi: Complex64 },
    Cnot { control: usize, target: usize },
    Single { qubit: usize, m: Matrix2 },
    Double { q1: usize, q2: usize, m: Box<Matrix4> },
}

impl CompiledOp {
    pub(crate) fn new(gate: &GateOp) -> Self {
        match *gate {
            GateOp::RotZ { qubit, angle } => {
                let lo = Complex64::from_polar(1.0, -angle / 2.0);
                CompiledOp::Phase {
                    mask: 1 << qubit,
                    lo,
                    hi: lo.conj(),
                }
            }
            GateOp::Cnot { control, target } => CompiledOp::Cnot { control, target },
            GateOp::Hadamard { qubit } | GateOp::RotY { qubit, .. } => CompiledOp::Single {
                qubit,
                m: gate.matrix2().expect("single-qubit gate"),
            },
            GateOp::TwoQubitN { q1, q2, .. } => CompiledOp::Double {
                q1,
                q2,
                m: Box::new(gate.matrix4().expect("two-qubit gate")),
            },
        }
    }

    pub(crate) fn apply(&self, state: &mut QuantumState) {
        match self {
            CompiledOp::Phase { mask, lo, hi } => {
                for (i, a) in state.amplitudes.iter_mut().enumerate() {
                    *a *= if i & mask == 0 { *lo } else { *hi };
                }
            }
            CompiledOp::Cnot { control, target } => state.apply_unchecked(&GateOp::cnot(*control, *target)),
            CompiledOp::Single { qubit, m } => state.apply_matrix2(*qubit, m),
            CompiledOp::Double { q1, q2, m } => state.apply_matrix4(*q1, *q2, m),
        }
    }
}

/// Inverse-CDF sampler over the Born distribution of a state.
pub(crate) struct BornSampler {
    cumulative: Vec<f64>,
}

impl BornSampler {
    pub(crate) fn new(state: &QuantumState) -> Self {
        let mut acc = 0.0;
        let cumulative = state
            .amplitudes
            .iter()
            .map(|a| {
                acc += a.norm_sqr();
                acc
            })
            .collect();
        Self { cumulative }
    }

    pub(crate) fn draw<R: Rng>(&self, rng: &mut R) -> usize {
        let total = *self.cumulative.last().expect("non-empty state");
        let u = rng.random::<f64>() * total;
        let idx = self.cumulative.partition_point(|&c| c <= u);
        idx.min(self.cumulative.len() - 1)
    }
}
