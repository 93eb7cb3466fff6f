//! CNOT and qubit counts of the CP map against the ZZ map, per feature count.

use quernel::maps::{CpMapParams, MapSpec, ZzMapConfig};
use quernel::report::resource_table;

fn main() -> quernel::Result<()> {
    let cp = resource_table(&MapSpec::Cp(CpMapParams::default()), 2..=30)?;
    let zz = resource_table(&MapSpec::Zz(ZzMapConfig::default()), 2..=30)?;

    println!("{:>8} {:>6} {:>8} {:>6} {:>8} {:>7}", "features", "cp_q", "cp_cnot", "zz_q", "zz_cnot", "ratio");
    for (c, z) in cp.iter().zip(&zz) {
        let ratio = if c.cnot_count == 0 {
            f64::INFINITY
        } else {
            z.cnot_count as f64 / c.cnot_count as f64
        };
        println!(
            "{:>8} {:>6} {:>8} {:>6} {:>8} {:>7.2}",
            c.features, c.qubits, c.cnot_count, z.qubits, z.cnot_count, ratio
        );
    }
    Ok(())
}
