use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use quernel::data::ExperimentConfig;
use quernel::maps::{CpMapParams, Entanglement, MapSpec, ZzMapConfig};
use quernel::report::{self, BenchmarkReport};
use quernel::{Error, Result};

#[derive(Parser)]
#[command(name = "quernel", version, about = "Quantum kernel resource tables, benchmarks and t-tests")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapArg {
    Z,
    Zz,
    Cp,
}

#[derive(Clone, Copy, ValueEnum)]
enum EntArg {
    Full,
    Linear,
}

#[derive(Subcommand)]
enum Command {
    /// Qubits, depth and CNOT count per feature count (CSV, or JSON for a .json path).
    Resources {
        #[arg(long, value_enum)]
        map: MapArg,
        /// Inclusive range `A..B`, or a single count.
        #[arg(long)]
        features: String,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        /// ZZ map pair pattern.
        #[arg(long, value_enum, default_value = "full")]
        entanglement: EntArg,
        /// Defaults to CSV on stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute and save train Gram and cross kernel matrices.
    Kernel {
        #[arg(long)]
        config: PathBuf,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run the full pipeline and write a JSON report.
    Benchmark {
        #[arg(long, required_unless_present = "from_kernels")]
        config: Option<PathBuf>,
        /// Reuse matrices written by `quernel kernel` instead of recomputing them.
        #[arg(long, conflicts_with = "config")]
        from_kernels: Option<PathBuf>,
        /// Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Paired t-tests between kernels across one or more reports.
    Ttest {
        #[arg(required = true)]
        reports: Vec<PathBuf>,
        /// Repeatable.
        #[arg(long = "metric", default_value = "mcc")]
        metrics: Vec<String>,
        /// CSV, or JSON for a .json path; defaults to a table on stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_config(path: &PathBuf) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::from_file(path)?;
    if let Some(seed) = cfg.apply_env_seed()? {
        eprintln!("{} = {seed} overrides split and kernel seeds", quernel::data::SEED_ENV);
    }
    Ok(cfg)
}

fn summarize(report: &BenchmarkReport) {
    for a in report.aggregates.iter().filter(|a| a.metric == "mcc" || a.metric == "accuracy") {
        eprintln!(
            "{:<10} {:<9} mean {:.4}  std {:.4}  ({} runs)",
            a.kernel, a.metric, a.mean, a.std, a.runs
        );
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Resources {
            map,
            features,
            reps,
            entanglement,
            out,
        } => {
            if reps == 0 {
                return Err(Error::Config("--reps must be >= 1".into()));
            }
            let spec = match map {
                MapArg::Z => MapSpec::Z { reps },
                MapArg::Zz => MapSpec::Zz(ZzMapConfig {
                    reps,
                    entanglement: match entanglement {
                        EntArg::Full => Entanglement::Full,
                        EntArg::Linear => Entanglement::Linear,
                    },
                }),
                MapArg::Cp => MapSpec::Cp(CpMapParams::with_reps(reps)),
            };
            let rows = report::resource_table(&spec, report::parse_feature_range(&features)?)?;
            match out {
                Some(p) => report::write_table(&p, &rows),
                None => report::write_csv(std::io::stdout().lock(), &rows),
            }
        }
        Command::Kernel { config, out, jobs } => {
            let cfg = load_config(&config)?;
            let manifest = report::with_jobs(jobs, || report::export_kernels(&cfg, &out))??;
            eprintln!("wrote {} matrix pairs to {}", manifest.entries.len(), out.display());
            Ok(())
        }
        Command::Benchmark {
            config,
            from_kernels,
            out,
            jobs,
        } => {
            let report = match (config, from_kernels) {
                (_, Some(dir)) => report::with_jobs(jobs, || report::run_benchmark_from_kernels(&dir))??,
                (Some(path), None) => {
                    let cfg = load_config(&path)?;
                    report::with_jobs(jobs, || report::run_benchmark(&cfg))??
                }
                (None, None) => unreachable!("clap requires one of --config/--from-kernels"),
            };
            summarize(&report);
            match out {
                Some(p) => report::write_json(&p, &report),
                None => {
                    println!("{}", serde_json::to_string_pretty(&report)?);
                    Ok(())
                }
            }
        }
        Command::Ttest { reports, metrics, out } => {
            let loaded = reports
                .iter()
                .map(|p| {
                    let name = p
                        .file_stem()
                        .map(|s| s.to_string_lossy().into_owned())
                        .unwrap_or_else(|| p.display().to_string());
                    report::read_json::<BenchmarkReport>(p).map(|r| (name, r))
                })
                .collect::<Result<Vec<_>>>()?;
            let rows = report::ttest_reports(&loaded, &metrics)?;
            match out {
                Some(p) => report::write_table(&p, &rows),
                None => {
                    print!("{}", report::format_ttest_table(&rows));
                    Ok(())
                }
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
