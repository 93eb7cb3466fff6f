//! End-to-end pipelines behind the `quernel` binary: resource tables,
//! benchmark reports, kernel export and paired t-tests over reports.

mod benchmark;
mod export;
mod resources;
mod ttest;

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use serde::Serialize;

pub use benchmark::{
    prepare_split, run_benchmark, Aggregate, BenchmarkReport, DatasetSummary, KernelResources, PreparedSplit,
    RunDiagnostics, RunRecord,
};
pub use export::{export_kernels, run_benchmark_from_kernels, KernelManifest, ManifestEntry, MANIFEST_FILE};
pub use resources::{parse_feature_range, resource_table, ResourceRow};
pub use ttest::{format_ttest_table, ttest_reports, TTestRow};

use crate::error::{Error, Result};

pub const TOOL_VERSION: &str = concat!("quernel ", env!("CARGO_PKG_VERSION"));

/// Runs `f` on a dedicated pool of `jobs` threads, or the global pool if `None`.
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Error::Config("--jobs must be >= 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Config(format!("cannot start {n} worker threads: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let f = File::create(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    let mut w = BufWriter::new(f);
    serde_json::to_writer_pretty(&mut w, value)?;
    use std::io::Write;
    writeln!(w).map_err(|e| Error::io(path.display().to_string(), e))?;
    Ok(())
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let f = File::open(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    serde_json::from_reader(std::io::BufReader::new(f))
        .map_err(|e| Error::Data(format!("{}: {e}", path.display())))
}

/// JSON when the extension is `.json`, CSV otherwise.
pub fn write_table<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        return write_json(path, &rows);
    }
    let f = File::create(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    write_csv(f, rows)
}

pub fn write_csv<T: Serialize, W: std::io::Write>(out: W, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::io("csv output", e))?;
    Ok(())
}
