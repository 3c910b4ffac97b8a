//! Brute-force ground truth for tiny instances.
//!
//! Nothing here shares code with the Lloyd engine's hot path: assignment uses
//! true (square-rooted) distances and the exhaustive search recomputes every
//! cluster mean from scratch.

use serde::Serialize;

use crate::dataset::DataMatrix;
use crate::error::{Error, Result};
use crate::lloyd::Assignment;
use crate::metrics::{euclidean, CentroidSet};

/// Largest `n` accepted by [`brute_force`].
pub const MAX_ORACLE_N: usize = 12;

/// Upper bound on `k^n` label vectors [`brute_force`] will walk.
pub const MAX_ORACLE_LABELINGS: u64 = 1 << 30;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub optimal_sse: f64,
    pub optimal_assignment: Assignment,
    /// Surjective label vectors scored.
    pub enumerated_count: u64,
}

/// Full scan over all centroids per row with Euclidean distance; ties to the
/// lowest centroid index.
pub fn naive_assign(m: &DataMatrix, cs: &CentroidSet) -> Result<Assignment> {
    let mut labels = Vec::with_capacity(m.rows());
    for row in m.iter_rows() {
        let mut best_j = 0;
        let mut best_d = euclidean(row, cs.centroid(0))?;
        for j in 1..cs.k() {
            let d = euclidean(row, cs.centroid(j))?;
            if d < best_d {
                best_j = j;
                best_d = d;
            }
        }
        labels.push(best_j);
    }
    Ok(Assignment::from(labels))
}

/// Globally optimal k-partition by exhaustive enumeration of label vectors.
///
/// Label vectors are visited in lexicographic order and only a strictly
/// smaller SSE replaces the incumbent, so ties resolve to the
/// lexicographically smallest labeling.
pub fn brute_force(m: &DataMatrix, k: usize) -> Result<OracleResult> {
    let n = m.rows();
    if k == 0 {
        return Err(Error::InvalidK(0));
    }
    if k > n {
        return Err(Error::KExceedsN { k, n });
    }
    let too_large = n > MAX_ORACLE_N
        || (k as u64)
            .checked_pow(n as u32)
            .is_none_or(|total| total > MAX_ORACLE_LABELINGS);
    if too_large {
        return Err(Error::InstanceTooLarge { n, k });
    }

    let d = m.cols();
    let mut labels = vec![0usize; n];
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut enumerated = 0u64;
    let mut sums = vec![0.0; k * d];
    let mut counts = vec![0usize; k];
    loop {
        sums.iter_mut().for_each(|s| *s = 0.0);
        counts.iter_mut().for_each(|c| *c = 0);
        for (row, &l) in m.iter_rows().zip(&labels) {
            counts[l] += 1;
            for (s, v) in sums[l * d..(l + 1) * d].iter_mut().zip(row) {
                *s += v;
            }
        }
        if counts.iter().all(|&c| c > 0) {
            enumerated += 1;
            let mut total = 0.0;
            for (row, &l) in m.iter_rows().zip(&labels) {
                let c = counts[l] as f64;
                for (v, s) in row.iter().zip(&sums[l * d..(l + 1) * d]) {
                    let dev = v - s / c;
                    total += dev * dev;
                }
            }
            if best.as_ref().is_none_or(|(b, _)| total < *b) {
                best = Some((total, labels.clone()));
            }
        }
        if !advance(&mut labels, k) {
            break;
        }
    }
    let (optimal_sse, labels) = best.expect("k <= n guarantees a surjective labeling");
    Ok(OracleResult {
        optimal_sse,
        optimal_assignment: Assignment::from(labels),
        enumerated_count: enumerated,
    })
}

// Odometer increment with the last position least significant.
fn advance(labels: &mut [usize], k: usize) -> bool {
    for l in labels.iter_mut().rev() {
        *l += 1;
        if *l < k {
            return true;
        }
        *l = 0;
    }
    false
}
