//! Prepare a Bell pair, sample it, and measure the output entropy.

use quernel::sim::{shannon_entropy, simulate, Circuit, GateOp};

fn main() -> quernel::Result<()> {
    let bell = Circuit::new(2, vec![GateOp::h(0), GateOp::cnot(0, 1)])?;
    let state = simulate(&bell)?;
    println!("probabilities: {:?}", state.probabilities());

    let counts = state.sample_counts(10_000, 7)?;
    for (bits, n) in counts.to_bitstring_map() {
        println!("{bits}: {n}");
    }
    println!("entropy: {:.4} bits", shannon_entropy(&counts));
    Ok(())
}
