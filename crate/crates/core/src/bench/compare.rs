use serde::Serialize;

use super::report::{CellRecord, ExperimentReport};
use super::ClusteringSpace;
use crate::error::{Error, Result};
use crate::init::Strategy;

/// Which SSE field a ranking reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CompareMode {
    /// The SSE of the space Lloyd ran in; every method in a group must have
    /// run in the same space.
    #[default]
    Strict,
    /// Raw-space SSE for every cell.
    Raw,
    /// Each method in its own clustering space, mixed spaces allowed. The
    /// resulting ranking is flagged `mixed_spaces`.
    OwnSpace,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodSummary {
    pub initializer: Strategy,
    pub space: ClusteringSpace,
    /// Ranking key: the single run, or the best over seeds.
    pub sse: f64,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    pub runs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ranking {
    pub dataset: String,
    pub k: usize,
    pub mixed_spaces: bool,
    /// Best (lowest SSE) first.
    pub methods: Vec<MethodSummary>,
}

impl Ranking {
    pub fn winner(&self) -> Strategy {
        self.methods[0].initializer
    }
}

/// Minimum own-space SSE over a set of runs.
pub(crate) fn representative_sse(cells: &[&CellRecord]) -> Option<f64> {
    cells.iter().map(|c| c.own_space_sse()).min_by(f64::total_cmp)
}

/// Ranks initializers by SSE for every (dataset, k) in the report.
pub fn compare_methods(r: &ExperimentReport, mode: CompareMode) -> Result<Vec<Ranking>> {
    if r.cells.is_empty() {
        return Err(Error::EmptyReport);
    }
    let mut out = Vec::new();
    for dataset in r.datasets() {
        for k in r.ks() {
            let mut methods = Vec::new();
            for s in r.initializers() {
                let cells = r.cells_for(dataset, s, k);
                if cells.is_empty() {
                    continue;
                }
                let space = match mode {
                    CompareMode::Raw => ClusteringSpace::Raw,
                    _ => cells[0].space,
                };
                let values: Vec<f64> = cells
                    .iter()
                    .map(|c| match mode {
                        CompareMode::Raw => c.sse_raw_space,
                        _ => c.own_space_sse(),
                    })
                    .collect();
                let min = values.iter().copied().fold(f64::INFINITY, f64::min);
                let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let mean = values.iter().sum::<f64>() / values.len() as f64;
                methods.push(MethodSummary {
                    initializer: s,
                    space,
                    sse: min,
                    mean,
                    min,
                    max,
                    runs: values.len(),
                });
            }
            if methods.is_empty() {
                continue;
            }
            let mixed = methods.iter().any(|m| m.space != methods[0].space);
            if mixed && mode == CompareMode::Strict {
                return Err(Error::IncomparableCells {
                    dataset: dataset.to_owned(),
                    k,
                });
            }
            methods.sort_by(|a, b| a.sse.total_cmp(&b.sse));
            out.push(Ranking {
                dataset: dataset.to_owned(),
                k,
                mixed_spaces: mixed,
                methods,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::report::{Metadata, Timing, SCHEMA_VERSION};
    use crate::dataset::NormalizationMethod;
    use crate::init::PRNG_NAME;
    use crate::lloyd::{Convergence, EmptyClusterPolicy};

    fn cell(initializer: Strategy, space: ClusteringSpace, own: f64, raw: f64, seed: Option<u64>) -> CellRecord {
        CellRecord {
            dataset: "iris".into(),
            initializer,
            k: 4,
            seed,
            space,
            normalization: NormalizationMethod::None,
            sse_model_space: own,
            sse_raw_space: raw,
            iterations: 1,
            converged: Convergence::MembershipStable,
            empty_cluster_events: 0,
        }
    }

    fn report(cells: Vec<CellRecord>) -> ExperimentReport {
        ExperimentReport {
            schema_version: SCHEMA_VERSION,
            metadata: Metadata {
                tool: "t".into(),
                tool_version: "0".into(),
                prng: PRNG_NAME.into(),
                normalization: NormalizationMethod::MaxAbs,
                max_iterations: 300,
                empty_cluster_policy: EmptyClusterPolicy::KeepPrevious,
            },
            cells,
            failed_cells: vec![],
            timing: Timing {
                generated_unix_ms: 0,
                total_wall_ms: 0.0,
                cell_wall_ms: vec![],
            },
        }
    }

    #[test]
    fn dp_ranked_first_in_own_space() {
        let r = report(vec![
            cell(Strategy::OriginPoint, ClusteringSpace::Raw, 83.8, 83.8, None),
            cell(Strategy::Dp, ClusteringSpace::Model, 10.6, 90.0, None),
        ]);
        let ranks = compare_methods(&r, CompareMode::OwnSpace).unwrap();
        assert_eq!(ranks.len(), 1);
        assert_eq!(ranks[0].winner(), Strategy::Dp);
        assert!(ranks[0].mixed_spaces);

        let raw = compare_methods(&r, CompareMode::Raw).unwrap();
        assert_eq!(raw[0].winner(), Strategy::OriginPoint);
        assert!(!raw[0].mixed_spaces);
    }

    #[test]
    fn mixed_spaces_blocked_by_default() {
        let r = report(vec![
            cell(Strategy::Dp, ClusteringSpace::Model, 10.6, 90.0, None),
            cell(Strategy::OriginPoint, ClusteringSpace::Raw, 83.8, 83.8, None),
        ]);
        assert!(matches!(
            compare_methods(&r, CompareMode::Strict),
            Err(Error::IncomparableCells { k: 4, .. })
        ));
    }

    #[test]
    fn single_method_and_seed_summary() {
        let r = report(vec![
            cell(Strategy::RandomMacQueen, ClusteringSpace::Raw, 60.0, 60.0, Some(0)),
            cell(Strategy::RandomMacQueen, ClusteringSpace::Raw, 57.0, 57.0, Some(1)),
            cell(Strategy::RandomMacQueen, ClusteringSpace::Raw, 66.0, 66.0, Some(2)),
        ]);
        let ranks = compare_methods(&r, CompareMode::Strict).unwrap();
        let m = &ranks[0].methods;
        assert_eq!(m.len(), 1);
        assert_eq!((m[0].sse, m[0].min, m[0].max, m[0].mean, m[0].runs), (57.0, 57.0, 66.0, 61.0, 3));
    }

    #[test]
    fn empty_report() {
        assert!(matches!(compare_methods(&report(vec![]), CompareMode::Raw), Err(Error::EmptyReport)));
    }
}
