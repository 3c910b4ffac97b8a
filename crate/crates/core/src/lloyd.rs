//! Hard-assignment Lloyd iteration with membership-stability convergence.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dataset::{inverse_transform, DataMatrix, NormalizationParams};
use crate::error::{Error, Result};
use crate::metrics::{sq_dist, sse, CentroidSet};

/// Cluster label per record.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment(Vec<usize>);

impl Assignment {
    pub fn labels(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of records in each of `k` clusters.
    pub fn counts(&self, k: usize) -> Vec<usize> {
        let mut counts = vec![0; k];
        for &l in &self.0 {
            counts[l] += 1;
        }
        counts
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

impl From<Vec<usize>> for Assignment {
    fn from(labels: Vec<usize>) -> Self {
        Self(labels)
    }
}

/// What happens to a centroid whose cluster lost all members.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmptyClusterPolicy {
    #[default]
    KeepPrevious,
    /// Move the centroid onto the record farthest from its own centroid.
    ReseedFarthest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LloydConfig {
    pub max_iterations: usize,
    pub empty_cluster_policy: EmptyClusterPolicy,
}

impl Default for LloydConfig {
    fn default() -> Self {
        Self {
            max_iterations: 300,
            empty_cluster_policy: EmptyClusterPolicy::KeepPrevious,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convergence {
    MembershipStable,
    MaxIterReached,
}

impl fmt::Display for Convergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::MembershipStable => "membership_stable",
            Self::MaxIterReached => "max_iter_reached",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteringResult {
    /// Final centroids in the space Lloyd ran in.
    pub centroids: CentroidSet,
    pub assignment: Assignment,
    pub sse_model_space: f64,
    /// Equal to `sse_model_space` until [`ClusteringResult::rescore_raw`]
    /// maps the centroids back to raw units.
    pub sse_raw_space: f64,
    pub iterations: usize,
    pub converged: Convergence,
    pub empty_cluster_events: usize,
    /// SSE after the initial assignment, then after every update and every
    /// subsequent assignment. Non-increasing.
    pub sse_trace: Vec<f64>,
}

impl ClusteringResult {
    /// Scores the final assignment against raw data using the inverse-mapped
    /// centroids.
    pub fn rescore_raw(&mut self, raw: &DataMatrix, params: &NormalizationParams) -> Result<()> {
        let raw_centroids = inverse_transform(&self.centroids, params)?;
        self.sse_raw_space = sse(raw, &raw_centroids, &self.assignment)?;
        Ok(())
    }
}

fn check_dims(m: &DataMatrix, cs: &CentroidSet) -> Result<()> {
    if m.cols() != cs.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.cols(),
            found: cs.dim(),
        });
    }
    Ok(())
}

/// Nearest centroid per row by squared distance; ties go to the lowest index.
pub fn assign(m: &DataMatrix, cs: &CentroidSet) -> Result<Assignment> {
    check_dims(m, cs)?;
    Ok(Assignment(m.iter_rows().map(|row| nearest(row, cs).0).collect()))
}

fn nearest(row: &[f64], cs: &CentroidSet) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (j, c) in cs.iter().enumerate() {
        let d = sq_dist(row, c);
        if d < best.1 {
            best = (j, d);
        }
    }
    best
}

/// Mean of each cluster's members. Empty clusters keep their previous
/// centroid.
pub fn update_centroids(
    m: &DataMatrix,
    a: &Assignment,
    k: usize,
    previous: &CentroidSet,
) -> Result<CentroidSet> {
    update_with_policy(m, a, k, previous, EmptyClusterPolicy::KeepPrevious).map(|(cs, _)| cs)
}

fn update_with_policy(
    m: &DataMatrix,
    a: &Assignment,
    k: usize,
    previous: &CentroidSet,
    policy: EmptyClusterPolicy,
) -> Result<(CentroidSet, usize)> {
    check_dims(m, previous)?;
    if previous.k() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: previous.k(),
        });
    }
    if a.len() != m.rows() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: a.len(),
        });
    }
    let d = m.cols();
    let mut sums = vec![0.0; k * d];
    let mut counts = vec![0usize; k];
    for (row, &label) in m.iter_rows().zip(a.labels()) {
        if label >= k {
            return Err(Error::IndexOutOfRange { index: label, k });
        }
        counts[label] += 1;
        for (s, v) in sums[label * d..(label + 1) * d].iter_mut().zip(row) {
            *s += v;
        }
    }
    let mut next = previous.clone();
    let mut empty = Vec::new();
    for j in 0..k {
        if counts[j] == 0 {
            empty.push(j);
            continue;
        }
        let n = counts[j] as f64;
        for (c, s) in next.centroid_mut(j).iter_mut().zip(&sums[j * d..(j + 1) * d]) {
            *c = s / n;
        }
    }
    if policy == EmptyClusterPolicy::ReseedFarthest && !empty.is_empty() {
        reseed_farthest(m, a, &counts, &mut next, &empty);
    }
    Ok((next, empty.len()))
}

// Each empty cluster takes the record farthest from its updated centroid,
// skipping records that are the sole member of their cluster and records
// already used.
fn reseed_farthest(
    m: &DataMatrix,
    a: &Assignment,
    counts: &[usize],
    cs: &mut CentroidSet,
    empty: &[usize],
) {
    let mut dist: Vec<(usize, f64)> = m
        .iter_rows()
        .zip(a.labels())
        .enumerate()
        .filter(|(_, (_, &l))| counts[l] > 1)
        .map(|(i, (row, &l))| (i, sq_dist(row, cs.centroid(l))))
        .collect();
    // farthest first, lowest row index on ties
    dist.sort_by(|x, y| y.1.total_cmp(&x.1).then(x.0.cmp(&y.0)));
    for (&j, &(i, _)) in empty.iter().zip(&dist) {
        cs.centroid_mut(j).copy_from_slice(m.row(i));
    }
}

/// Alternates assignment and mean update until the assignment stops changing
/// or `cfg.max_iterations` updates have been made.
pub fn run_lloyd(m: &DataMatrix, init: &CentroidSet, cfg: &LloydConfig) -> Result<ClusteringResult> {
    check_dims(m, init)?;
    let k = init.k();
    if k > m.rows() {
        return Err(Error::KExceedsN { k, n: m.rows() });
    }
    if cfg.max_iterations == 0 {
        return Err(Error::InvalidExperiment("max_iterations must be at least 1".into()));
    }

    let mut centroids = init.clone();
    let mut assignment = assign(m, &centroids)?;
    let mut trace = vec![sse(m, &centroids, &assignment)?];
    let mut empty_events = 0;
    let mut iterations = 0;
    let converged = loop {
        iterations += 1;
        let (next, empties) =
            update_with_policy(m, &assignment, k, &centroids, cfg.empty_cluster_policy)?;
        empty_events += empties;
        centroids = next;
        trace.push(sse(m, &centroids, &assignment)?);

        let relabeled = assign(m, &centroids)?;
        trace.push(sse(m, &centroids, &relabeled)?);
        if relabeled == assignment {
            break Convergence::MembershipStable;
        }
        assignment = relabeled;
        if iterations >= cfg.max_iterations {
            break Convergence::MaxIterReached;
        }
    };

    let final_sse = *trace.last().expect("trace is non-empty");
    Ok(ClusteringResult {
        centroids,
        assignment,
        sse_model_space: final_sse,
        sse_raw_space: final_sse,
        iterations,
        converged,
        empty_cluster_events: empty_events,
        sse_trace: trace,
    })
}
