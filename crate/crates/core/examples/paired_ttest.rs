//! Paired t-tests: a hand-checkable case, then kernels compared across runs.

use quernel::data::ExperimentConfig;
use quernel::ml::paired_t_test;
use quernel::report::{format_ttest_table, run_benchmark, ttest_reports};

fn main() -> quernel::Result<()> {
    let a = [0.91, 0.88, 0.93, 0.90, 0.94];
    let b = [0.81, 0.80, 0.80, 0.82, 0.81];
    let t = paired_t_test(&a, &b)?;
    println!("t = {:.4}, p = {:.4}, dof = {}", t.t_statistic, t.p_value, t.dof);

    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/sample_csv.json");
    let report = run_benchmark(&ExperimentConfig::from_file(&path)?)?;
    let rows = ttest_reports(&[("sample".into(), report)], &["mcc".into(), "f1".into()])?;
    print!("{}", format_ttest_table(&rows));
    Ok(())
}
