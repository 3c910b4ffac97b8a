//! Experiment grid runner: datasets x initializers x k (x seeds for the
//! random initializer), with SSE reported in both the clustering space and
//! raw attribute units.

mod compare;
mod report;
mod svg;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::dataset::{descriptor, inverse_transform, load_csv, normalize, CsvOptions, DataMatrix, NormalizationMethod, NormalizationParams};
use crate::error::{Error, Result};
use crate::init::{initialize, InitSpec, SortSpace, Strategy};
use crate::lloyd::{run_lloyd, LloydConfig};

pub use compare::{compare_methods, CompareMode, MethodSummary, Ranking};
pub use report::{
    emit_report, parse_csv, render_report, CellRecord, CsvRow, ExperimentReport, FailedCell, Metadata,
    ReportFormat, Timing, SCHEMA_VERSION,
};

/// Space in which Lloyd iterates for a given initializer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClusteringSpace {
    /// The normalized data.
    Model,
    /// Raw attribute units.
    Raw,
}

impl ClusteringSpace {
    /// `dp` clusters its normalized data; the baselines operate on raw data.
    pub fn default_for(strategy: Strategy) -> Self {
        match strategy {
            Strategy::Dp => Self::Model,
            _ => Self::Raw,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Model => "model",
            Self::Raw => "raw",
        }
    }
}

impl fmt::Display for ClusteringSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClusteringSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "model" => Ok(Self::Model),
            "raw" => Ok(Self::Raw),
            _ => Err(Error::UnknownName {
                kind: "clustering space",
                value: s.to_owned(),
            }),
        }
    }
}

/// A dataset by registry name or by file path.
#[derive(Debug, Clone, PartialEq)]
pub enum DatasetRef {
    Registry(String),
    Path { path: PathBuf, options: CsvOptions },
}

impl DatasetRef {
    /// Registry names win; anything else is treated as a path.
    pub fn parse(s: &str, options: &CsvOptions) -> Self {
        if descriptor(s).is_ok() {
            Self::Registry(s.to_owned())
        } else {
            Self::Path {
                path: PathBuf::from(s),
                options: options.clone(),
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Self::Registry(name) => name.clone(),
            Self::Path { path, .. } => path
                .file_stem()
                .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned()),
        }
    }

    pub fn load(&self, data_dir: &Path) -> Result<DataMatrix> {
        match self {
            Self::Registry(name) => descriptor(name)?.load(data_dir),
            Self::Path { path, options } => load_csv(path, options),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub datasets: Vec<DatasetRef>,
    /// Where registry datasets are looked up.
    pub data_dir: PathBuf,
    pub initializers: Vec<Strategy>,
    pub ks: Vec<usize>,
    pub normalization: NormalizationMethod,
    pub sort_space: SortSpace,
    pub lloyd: LloydConfig,
    /// Expanded for the random initializer only.
    pub seeds: Vec<u64>,
    /// Forces one space for every initializer; `None` uses
    /// [`ClusteringSpace::default_for`].
    pub space: Option<ClusteringSpace>,
}

impl ExperimentSpec {
    pub fn new(datasets: Vec<DatasetRef>, initializers: Vec<Strategy>, ks: Vec<usize>) -> Self {
        let seeds = if initializers.contains(&Strategy::RandomMacQueen) {
            (0..30).collect()
        } else {
            Vec::new()
        };
        Self {
            datasets,
            data_dir: PathBuf::from("data"),
            initializers,
            ks,
            normalization: NormalizationMethod::MaxAbs,
            sort_space: SortSpace::Normalized,
            lloyd: LloydConfig::default(),
            seeds,
            space: None,
        }
    }

    pub fn space_for(&self, strategy: Strategy) -> ClusteringSpace {
        self.space.unwrap_or_else(|| ClusteringSpace::default_for(strategy))
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: &str| Err(Error::InvalidExperiment(msg.to_owned()));
        if self.datasets.is_empty() {
            return invalid("no datasets");
        }
        if self.initializers.is_empty() {
            return invalid("no initializers");
        }
        if self.ks.is_empty() {
            return invalid("no k values");
        }
        if let Some(&k) = self.ks.iter().find(|&&k| k < 2) {
            return Err(Error::InvalidK(k));
        }
        if self.lloyd.max_iterations == 0 {
            return invalid("max iterations must be at least 1");
        }
        let random = self.initializers.contains(&Strategy::RandomMacQueen);
        match (random, self.seeds.is_empty()) {
            (true, true) => invalid("random initializer selected without seeds"),
            (false, false) => invalid("seeds given but random initializer not selected"),
            _ => Ok(()),
        }
    }

    /// Number of grid cells the spec expands to.
    pub fn cell_count(&self) -> usize {
        let per_k: usize = self
            .initializers
            .iter()
            .map(|s| if s.is_deterministic() { 1 } else { self.seeds.len() })
            .sum();
        self.datasets.len() * self.ks.len() * per_k
    }
}

struct PreparedDataset {
    raw: DataMatrix,
    normalized: DataMatrix,
    params: NormalizationParams,
}

/// One fully specified grid cell.
#[derive(Debug, Clone, Copy)]
struct Cell {
    strategy: Strategy,
    k: usize,
    seed: Option<u64>,
}

/// Runs every cell of the grid in order (dataset, initializer, k, seed).
/// Failures are recorded per cell and never abort the grid.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    let started = Instant::now();
    let mut report = ExperimentReport::new(spec);

    for dataset in &spec.datasets {
        let name = dataset.name();
        let prepared = dataset.load(&spec.data_dir).and_then(|raw| {
            let (normalized, params) = normalize(&raw, spec.normalization)?;
            Ok(PreparedDataset {
                raw,
                normalized,
                params,
            })
        });
        for &strategy in &spec.initializers {
            for &k in &spec.ks {
                let seeds: Vec<Option<u64>> = if strategy.is_deterministic() {
                    vec![None]
                } else {
                    spec.seeds.iter().copied().map(Some).collect()
                };
                for seed in seeds {
                    let cell = Cell { strategy, k, seed };
                    let timer = Instant::now();
                    let outcome = match &prepared {
                        Ok(p) => run_cell(spec, p, cell),
                        Err(e) => Err(Error::InvalidExperiment(format!("dataset unavailable: {e}"))),
                    };
                    let wall_ms = timer.elapsed().as_secs_f64() * 1e3;
                    match outcome {
                        Ok(mut record) => {
                            record.dataset = name.clone();
                            report.push_cell(record, wall_ms);
                        }
                        Err(e) => report.failed_cells.push(FailedCell {
                            dataset: name.clone(),
                            initializer: strategy,
                            k,
                            seed,
                            error: e.to_string(),
                        }),
                    }
                }
            }
        }
    }
    report.finish_timing(started.elapsed().as_secs_f64() * 1e3);
    Ok(report)
}

fn run_cell(spec: &ExperimentSpec, data: &PreparedDataset, cell: Cell) -> Result<CellRecord> {
    let space = spec.space_for(cell.strategy);
    let init_spec = InitSpec {
        strategy: cell.strategy,
        k: cell.k,
        seed: cell.seed,
        normalization: spec.normalization,
        sort_space: spec.sort_space,
    };
    let model_data = match space {
        ClusteringSpace::Model => &data.normalized,
        ClusteringSpace::Raw => &data.raw,
    };
    let init = match cell.strategy {
        // dp always seeds from raw data and hands back normalized centroids
        Strategy::Dp => {
            let seeding = initialize(&data.raw, &init_spec)?;
            match space {
                ClusteringSpace::Model => seeding.centroids,
                ClusteringSpace::Raw => inverse_transform(
                    &seeding.centroids,
                    seeding.normalization.as_ref().expect("dp returns its normalization"),
                )?,
            }
        }
        _ => initialize(model_data, &init_spec)?.centroids,
    };
    let mut result = run_lloyd(model_data, &init, &spec.lloyd)?;
    if space == ClusteringSpace::Model {
        result.rescore_raw(&data.raw, &data.params)?;
    }
    Ok(CellRecord {
        dataset: String::new(),
        initializer: cell.strategy,
        k: cell.k,
        seed: cell.seed,
        space,
        normalization: match space {
            ClusteringSpace::Model => spec.normalization,
            ClusteringSpace::Raw => NormalizationMethod::None,
        },
        sse_model_space: result.sse_model_space,
        sse_raw_space: result.sse_raw_space,
        iterations: result.iterations,
        converged: result.converged,
        empty_cluster_events: result.empty_cluster_events,
    })
}

impl CellRecord {
    /// SSE in the space Lloyd ran in.
    pub fn own_space_sse(&self) -> f64 {
        self.sse_model_space
    }
}
