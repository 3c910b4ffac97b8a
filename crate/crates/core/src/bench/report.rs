use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use super::compare::representative_sse;
use super::{svg, ClusteringSpace, ExperimentSpec};
use crate::dataset::NormalizationMethod;
use crate::error::{Error, Result};
use crate::init::{Strategy, PRNG_NAME};
use crate::lloyd::{Convergence, EmptyClusterPolicy};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub dataset: String,
    pub initializer: Strategy,
    pub k: usize,
    pub seed: Option<u64>,
    /// Space Lloyd ran in.
    pub space: ClusteringSpace,
    /// Normalization applied to the data Lloyd ran on.
    pub normalization: NormalizationMethod,
    pub sse_model_space: f64,
    pub sse_raw_space: f64,
    pub iterations: usize,
    pub converged: Convergence,
    pub empty_cluster_events: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailedCell {
    pub dataset: String,
    pub initializer: Strategy,
    pub k: usize,
    pub seed: Option<u64>,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub tool_version: String,
    pub prng: String,
    pub normalization: NormalizationMethod,
    pub max_iterations: usize,
    pub empty_cluster_policy: EmptyClusterPolicy,
}

/// Everything that varies between otherwise identical runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub generated_unix_ms: u128,
    pub total_wall_ms: f64,
    /// Parallel to `ExperimentReport::cells`.
    pub cell_wall_ms: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub metadata: Metadata,
    pub cells: Vec<CellRecord>,
    pub failed_cells: Vec<FailedCell>,
    pub timing: Timing,
}

impl ExperimentReport {
    pub(super) fn new(spec: &ExperimentSpec) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            metadata: Metadata {
                tool: env!("CARGO_PKG_NAME").to_owned(),
                tool_version: env!("CARGO_PKG_VERSION").to_owned(),
                prng: PRNG_NAME.to_owned(),
                normalization: spec.normalization,
                max_iterations: spec.lloyd.max_iterations,
                empty_cluster_policy: spec.lloyd.empty_cluster_policy,
            },
            cells: Vec::new(),
            failed_cells: Vec::new(),
            timing: Timing {
                generated_unix_ms: 0,
                total_wall_ms: 0.0,
                cell_wall_ms: Vec::new(),
            },
        }
    }

    pub(super) fn push_cell(&mut self, cell: CellRecord, wall_ms: f64) {
        self.cells.push(cell);
        self.timing.cell_wall_ms.push(wall_ms);
    }

    pub(super) fn finish_timing(&mut self, total_ms: f64) {
        self.timing.total_wall_ms = total_ms;
        self.timing.generated_unix_ms = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_millis());
    }

    /// Full report as pretty JSON, timing included.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// JSON without the timing block; identical across reruns of a
    /// deterministic spec.
    pub fn to_deterministic_json(&self) -> Result<String> {
        let mut value = serde_json::to_value(self)?;
        if let Some(obj) = value.as_object_mut() {
            obj.remove("timing");
        }
        Ok(serde_json::to_string_pretty(&value)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn has_failures(&self) -> bool {
        !self.failed_cells.is_empty()
    }

    /// Datasets in first-appearance order.
    pub fn datasets(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for c in &self.cells {
            if !out.contains(&c.dataset.as_str()) {
                out.push(&c.dataset);
            }
        }
        out
    }

    pub fn initializers(&self) -> Vec<Strategy> {
        let mut out = Vec::new();
        for c in &self.cells {
            if !out.contains(&c.initializer) {
                out.push(c.initializer);
            }
        }
        out
    }

    pub fn ks(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for c in &self.cells {
            if !out.contains(&c.k) {
                out.push(c.k);
            }
        }
        out
    }

    pub(crate) fn cells_for(&self, dataset: &str, initializer: Strategy, k: usize) -> Vec<&CellRecord> {
        self.cells
            .iter()
            .filter(|c| c.dataset == dataset && c.initializer == initializer && c.k == k)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    MarkdownTable,
    SvgBarChart,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            "markdown_table" | "markdown" | "md" => Ok(Self::MarkdownTable),
            "svg_bar_chart" | "svg" => Ok(Self::SvgBarChart),
            _ => Err(Error::UnknownFormat(s.to_owned())),
        }
    }
}

/// One CSV line per cell. Field order is the column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub dataset: String,
    pub initializer: Strategy,
    pub k: usize,
    pub seed: Option<u64>,
    pub space: ClusteringSpace,
    pub normalization: NormalizationMethod,
    pub sse_model_space: f64,
    pub sse_raw_space: f64,
    pub iterations: usize,
    pub converged: Convergence,
    pub empty_cluster_events: usize,
    pub wall_time_ms: f64,
}

pub fn render_report(r: &ExperimentReport, format: ReportFormat) -> Result<String> {
    if r.cells.is_empty() {
        return Err(Error::EmptyReport);
    }
    match format {
        ReportFormat::Json => r.to_json(),
        ReportFormat::Csv => render_csv(r),
        ReportFormat::MarkdownTable => Ok(render_markdown(r)),
        ReportFormat::SvgBarChart => Ok(svg::render(r)),
    }
}

pub fn emit_report(r: &ExperimentReport, format: ReportFormat, path: impl AsRef<Path>) -> Result<()> {
    let text = render_report(r, format)?;
    std::fs::write(path, text)?;
    Ok(())
}

fn render_csv(r: &ExperimentReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for (i, c) in r.cells.iter().enumerate() {
        w.serialize(CsvRow {
            dataset: c.dataset.clone(),
            initializer: c.initializer,
            k: c.k,
            seed: c.seed,
            space: c.space,
            normalization: c.normalization,
            sse_model_space: c.sse_model_space,
            sse_raw_space: c.sse_raw_space,
            iterations: c.iterations,
            converged: c.converged,
            empty_cluster_events: c.empty_cluster_events,
            wall_time_ms: r.timing.cell_wall_ms.get(i).copied().unwrap_or(0.0),
        })?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Parses CSV produced by [`render_report`].
pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    rdr.deserialize().map(|row| row.map_err(Error::from)).collect()
}

/// Row label for a method, e.g. `dp [model]` or `random [raw, best of 30]`.
pub(crate) fn method_label(r: &ExperimentReport, s: Strategy) -> String {
    let space = r
        .cells
        .iter()
        .find(|c| c.initializer == s)
        .map_or("?", |c| c.space.as_str());
    if s.is_deterministic() {
        format!("{s} [{space}]")
    } else {
        let runs = r.cells.iter().filter(|c| c.initializer == s).count()
            / (r.datasets().len() * r.ks().len()).max(1);
        format!("{s} [{space}, best of {runs}]")
    }
}

// One table per k: methods down, datasets across.
fn render_markdown(r: &ExperimentReport) -> String {
    let datasets = r.datasets();
    let mut out = String::new();
    for (i, k) in r.ks().into_iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "SSE, k = {k}\n");
        let _ = writeln!(out, "| Method | {} |", datasets.join(" | "));
        let _ = writeln!(out, "|---|{}", "---:|".repeat(datasets.len()));
        for s in r.initializers() {
            let values: Vec<String> = datasets
                .iter()
                .map(|d| {
                    representative_sse(&r.cells_for(d, s, k))
                        .map_or_else(|| "n/a".to_owned(), |v| format!("{v:.3}"))
                })
                .collect();
            let _ = writeln!(out, "| {} | {} |", method_label(r, s), values.join(" | "));
        }
    }
    out
}
