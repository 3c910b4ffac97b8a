use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dpkmeans::bench::{emit_report, run_experiment, ClusteringSpace, DatasetRef, ExperimentSpec, ReportFormat};
use dpkmeans::dataset::{registry, CsvOptions, NormalizationMethod};
use dpkmeans::init::{SortSpace, Strategy};
use dpkmeans::lloyd::{EmptyClusterPolicy, LloydConfig};
use dpkmeans::verify::{run_verification, VerifyConfig};

/// Relative `--out` paths resolve against this directory when set.
const OUT_DIR_ENV: &str = "DPKM_OUT_DIR";

#[derive(Parser)]
#[command(name = "dpkm", version, about = "k-means initializer benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment grid and write a report.
    Run(RunArgs),
    /// Built-in dataset registry.
    Datasets {
        #[command(subcommand)]
        action: DatasetsAction,
    },
    /// Check the engine against the brute-force oracle on random instances.
    Verify {
        #[arg(long, default_value_t = 200)]
        instances: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum DatasetsAction {
    List,
}

#[derive(Args)]
struct RunArgs {
    /// Registry name or CSV path; repeatable.
    #[arg(long = "dataset", required = true)]
    datasets: Vec<String>,
    #[arg(long, value_delimiter = ',', required = true)]
    init: Vec<Strategy>,
    #[arg(long, value_delimiter = ',', required = true)]
    k: Vec<usize>,
    /// `a..b` (inclusive) or a comma list. Defaults to 0..29 when `random`
    /// is selected.
    #[arg(long)]
    seeds: Option<String>,
    #[arg(long, default_value = "maxabs")]
    normalize: NormalizationMethod,
    /// Force every initializer into one clustering space.
    #[arg(long)]
    space: Option<ClusteringSpace>,
    /// Compute dp sort distances on raw instead of normalized data.
    #[arg(long)]
    dp_raw_sort: bool,
    #[arg(long, default_value_t = 300)]
    max_iter: usize,
    #[arg(long)]
    reseed_empty: bool,
    /// Directory holding registry dataset files.
    #[arg(long, default_value = "data")]
    data_dir: PathBuf,
    /// Path datasets: first line is a header.
    #[arg(long)]
    header: bool,
    /// Path datasets: zero-based label column to drop.
    #[arg(long)]
    label_column: Option<usize>,
    /// Path datasets: field delimiter.
    #[arg(long, default_value_t = ',')]
    delimiter: char,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    format: ReportFormat,
}

fn parse_seeds(s: &str) -> Result<Vec<u64>, String> {
    if let Some((a, b)) = s.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|e| format!("bad seed range start: {e}"))?;
        let b: u64 = b.trim().parse().map_err(|e| format!("bad seed range end: {e}"))?;
        if b < a {
            return Err(format!("empty seed range {s}"));
        }
        return Ok((a..=b).collect());
    }
    s.split(',')
        .map(|t| t.trim().parse().map_err(|e| format!("bad seed {t:?}: {e}")))
        .collect()
}

fn build_spec(args: &RunArgs) -> Result<ExperimentSpec, String> {
    let csv = CsvOptions {
        has_header: args.header,
        label_column: args.label_column,
        delimiter: args.delimiter,
    };
    let datasets = args.datasets.iter().map(|d| DatasetRef::parse(d, &csv)).collect();
    let mut spec = ExperimentSpec::new(datasets, args.init.clone(), args.k.clone());
    if let Some(seeds) = &args.seeds {
        spec.seeds = parse_seeds(seeds)?;
    }
    spec.data_dir = args.data_dir.clone();
    spec.normalization = args.normalize;
    spec.space = args.space;
    if args.dp_raw_sort {
        spec.sort_space = SortSpace::Raw;
    }
    spec.lloyd = LloydConfig {
        max_iterations: args.max_iter,
        empty_cluster_policy: if args.reseed_empty {
            EmptyClusterPolicy::ReseedFarthest
        } else {
            EmptyClusterPolicy::KeepPrevious
        },
    };
    spec.validate().map_err(|e| e.to_string())?;
    Ok(spec)
}

fn run(args: RunArgs) -> ExitCode {
    let spec = match build_spec(&args) {
        Ok(spec) => spec,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run_experiment(&spec) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let out = match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if args.out.is_relative() => PathBuf::from(dir).join(&args.out),
        _ => args.out.clone(),
    };
    if let Err(e) = emit_report(&report, args.format, &out) {
        eprintln!("error: writing {}: {e}", out.display());
        return ExitCode::from(1);
    }
    // one line per distinct (dataset, error)
    let mut groups: Vec<(&str, &str, usize)> = Vec::new();
    for failed in &report.failed_cells {
        match groups
            .iter_mut()
            .find(|(d, e, _)| *d == failed.dataset && *e == failed.error)
        {
            Some(g) => g.2 += 1,
            None => groups.push((&failed.dataset, &failed.error, 1)),
        }
    }
    for (dataset, error, count) in groups {
        eprintln!("failed: {dataset} ({count} cells): {error}");
    }
    eprintln!(
        "{} cells, {} failed -> {}",
        report.cells.len(),
        report.failed_cells.len(),
        out.display()
    );
    if report.has_failures() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run(args) => run(args),
        Command::Datasets {
            action: DatasetsAction::List,
        } => {
            println!("{:<14} {:>10} {:>8} {:>6}  file", "name", "attributes", "records", "label");
            for d in registry() {
                let label = d.label_column.map_or("-".to_owned(), |c| c.to_string());
                println!(
                    "{:<14} {:>10} {:>8} {:>6}  {}",
                    d.name, d.attributes, d.records, label, d.file_name
                );
            }
            ExitCode::SUCCESS
        }
        Command::Verify { instances, seed } => {
            match run_verification(&VerifyConfig { instances, seed }) {
                Ok(checks) => {
                    let mut ok = true;
                    for c in &checks {
                        let status = if c.passed() { "PASS" } else { "FAIL" };
                        println!("{status} {} ({} checked, {} violations)", c.name, c.checked, c.violations);
                        ok &= c.passed();
                    }
                    if ok {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
    }
}
