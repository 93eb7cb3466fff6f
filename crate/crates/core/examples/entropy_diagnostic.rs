//! Output entropy of a CP-map circuit as noise grows, the diagnostic used to
//! tell a structured hardware run from one that has washed out to uniform.

use quernel::maps::{build_cp_map, CpMapParams};
use quernel::sim::{shannon_entropy, simulate_noisy, NoiseModel};

fn main() -> quernel::Result<()> {
    let x: Vec<f64> = (0..22).map(|i| 0.1 + 0.13 * i as f64).collect();
    let circuit = build_cp_map(&x, &CpMapParams::default())?;
    let n = circuit.num_qubits();
    println!("22 features on {n} qubits, maximum entropy {n} bits");

    for p2 in [0.0, 0.01, 0.05, 0.2] {
        let noise = NoiseModel::new(p2 / 10.0, p2, p2 / 2.0)?;
        let counts = simulate_noisy(&circuit, &noise, 4_000, 4)?;
        println!("p2 = {p2:<5} entropy {:.3} bits", shannon_entropy(&counts));
    }
    Ok(())
}
