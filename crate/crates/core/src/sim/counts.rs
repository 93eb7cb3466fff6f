use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

/// Measurement histogram. Bitstrings are written with qubit `n-1` leftmost,
/// so the string of basis index `k` is `format!("{k:0n$b}")`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeCounts {
    num_qubits: usize,
    counts: BTreeMap<usize, u64>,
    shots: u64,
}

impl OutcomeCounts {
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            counts: BTreeMap::new(),
            shots: 0,
        }
    }

    pub fn record(&mut self, outcome: usize, times: u64) {
        if times == 0 {
            return;
        }
        *self.counts.entry(outcome).or_insert(0) += times;
        self.shots += times;
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    /// Count for basis index `outcome`.
    pub fn count(&self, outcome: usize) -> u64 {
        self.counts.get(&outcome).copied().unwrap_or(0)
    }

    /// Count for a bitstring such as `"011"`. Malformed strings count zero.
    pub fn get(&self, bits: &str) -> u64 {
        if bits.len() != self.num_qubits {
            return 0;
        }
        usize::from_str_radix(bits, 2).map_or(0, |k| self.count(k))
    }

    pub fn frequency(&self, outcome: usize) -> f64 {
        if self.shots == 0 {
            0.0
        } else {
            self.count(outcome) as f64 / self.shots as f64
        }
    }

    /// Observed `(basis index, count)` pairs in index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().map(|(&k, &v)| (k, v))
    }

    pub fn bitstring(&self, outcome: usize) -> String {
        format!("{outcome:0width$b}", width = self.num_qubits)
    }

    pub fn to_bitstring_map(&self) -> BTreeMap<String, u64> {
        self.iter().map(|(k, v)| (self.bitstring(k), v)).collect()
    }

    /// Total-variation distance between the empirical distribution and `probs`.
    pub fn tv_distance(&self, probs: &[f64]) -> f64 {
        let mut tv = 0.0;
        for (k, p) in probs.iter().enumerate() {
            tv += (self.frequency(k) - p).abs();
        }
        // outcomes outside `probs` (should not happen for matching registers)
        for (k, _) in self.iter().filter(|(k, _)| *k >= probs.len()) {
            tv += self.frequency(k);
        }
        tv / 2.0
    }
}

impl Serialize for OutcomeCounts {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_bitstring_map().serialize(serializer)
    }
}

/// Shannon entropy in bits of the observed outcome frequencies.
pub fn shannon_entropy(counts: &OutcomeCounts) -> f64 {
    if counts.shots() == 0 {
        return 0.0;
    }
    let total = counts.shots() as f64;
    let h: f64 = counts
        .iter()
        .map(|(_, c)| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum();
    // -0.0 for a single outcome
    h.max(0.0)
}
