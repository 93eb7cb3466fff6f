//! How depolarizing noise pulls CP-map kernel entries away from their exact values.

use quernel::kernel::{kernel_matrix, KernelConfig};
use quernel::maps::{CpMapParams, MapSpec};
use quernel::sim::NoiseModel;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> quernel::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x: Vec<Vec<f64>> = (0..8)
        .map(|_| (0..7).map(|_| rng.random_range(0.0..std::f64::consts::PI)).collect())
        .collect();
    let map = MapSpec::Cp(CpMapParams::default());
    let exact = kernel_matrix(&x, &map, &KernelConfig::exact())?;

    for p2 in [0.0, 0.005, 0.02, 0.05] {
        let noise = NoiseModel::new(p2 / 10.0, p2, 0.01)?;
        let noisy = kernel_matrix(&x, &map, &KernelConfig::noisy(noise, 4_000, 9))?;
        let diff = noisy.matrix() - exact.matrix();
        println!(
            "p2 = {p2:<5} mean |Δ| = {:.4}  mean off-diagonal = {:.4}",
            diff.abs().mean(),
            off_diagonal_mean(noisy.matrix())
        );
    }
    Ok(())
}

fn off_diagonal_mean(m: &nalgebra::DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let total: f64 = m.iter().sum::<f64>() - m.trace();
    total / (n * n - n) as f64
}
