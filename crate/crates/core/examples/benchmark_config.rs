//! Run a JSON experiment config through the full pipeline.
//!
//! `cargo run --example benchmark_config -- [config.json] [report.json]`

use std::path::PathBuf;

use quernel::data::ExperimentConfig;
use quernel::report::{run_benchmark, write_json};

fn main() -> quernel::Result<()> {
    let mut args = std::env::args().skip(1);
    let config = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/sample_csv.json"));

    let mut cfg = ExperimentConfig::from_file(&config)?;
    cfg.apply_env_seed()?;
    let report = run_benchmark(&cfg)?;

    println!("{} rows ({} dropped)", report.dataset.rows, report.dataset.rows_dropped);
    for a in report.aggregates.iter().filter(|a| a.metric == "mcc") {
        println!("{:<8} mcc {:.3} ± {:.3} over {} runs", a.kernel, a.mean, a.std, a.runs);
    }
    for r in &report.resources {
        println!(
            "{:<8} {} qubits, {} CNOTs, depth {}",
            r.kernel, r.resources.num_qubits, r.resources.cnot_count, r.resources.depth
        );
    }
    if let Some(out) = args.next() {
        write_json(&PathBuf::from(out), &report)?;
    }
    Ok(())
}
