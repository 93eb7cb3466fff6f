//! The parameterized two-qubit gate N(α, β, γ) and its 3-CNOT circuit.

use quernel::sim::{n_decomposition, n_matrix, phase_distance, Matrix4};

fn main() -> quernel::Result<()> {
    let (a, b, g) = (std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_8);
    let target = n_matrix(a, b, g)?;
    let circuit = n_decomposition(a, b, g)?;

    for op in circuit.ops() {
        println!("{op:?}");
    }
    let cnots = circuit.ops().iter().filter(|op| op.is_two_qubit()).count();
    let u = circuit.unitary()?;
    let built: Matrix4 = std::array::from_fn(|r| std::array::from_fn(|c| u[r][c]));
    let dist = phase_distance(&target, &built);
    println!("{cnots} CNOTs, distance to exp[i(αXX+βYY+γZZ)] up to phase: {dist:.2e}");
    Ok(())
}
