//! Exact and shot-sampled fidelity kernels for the CP map.

use quernel::data::{synthesize_gaussian, SyntheticSpec};
use quernel::kernel::{kernel_matrix, KernelConfig};
use quernel::maps::{CpMapParams, MapSpec};
use quernel::ml::scale_to_angles;

fn main() -> quernel::Result<()> {
    let ds = synthesize_gaussian(&SyntheticSpec {
        num_samples: 12,
        num_features: 7,
        separation: 3.0,
        seed: 5,
    })?;
    let (x, _) = scale_to_angles(&ds.features)?;
    let map = MapSpec::Cp(CpMapParams::default());

    let exact = kernel_matrix(&x, &map, &KernelConfig::exact())?;
    println!("exact Gram, first rows:");
    for i in 0..4 {
        let row: Vec<String> = (0..6).map(|j| format!("{:.3}", exact.get(i, j))).collect();
        println!("  {}", row.join(" "));
    }
    println!("min eigenvalue {:.3e}", exact.min_eigenvalue());

    for shots in [100, 1_000, 10_000] {
        let sampled = kernel_matrix(&x, &map, &KernelConfig::shots(shots, 1))?;
        let err = (sampled.matrix() - exact.matrix()).abs().mean();
        println!(
            "{shots:>6} shots: mean |error| {err:.4}, min eigenvalue {:.3e}",
            sampled.min_eigenvalue()
        );
    }
    Ok(())
}
