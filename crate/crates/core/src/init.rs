//! Initial centroid strategies.
//!
//! Three of the four strategies share the same skeleton: compute a sort key
//! per record, stable-sort ascending, cut the sorted order into `k` balanced
//! contiguous blocks, and summarize each block.
//!
//! | strategy   | sort key                               | block summary         |
//! |------------|----------------------------------------|-----------------------|
//! | `dp`       | distance to the mean of normalized data | midrange (normalized) |
//! | `origin`   | distance of the raw record to zero      | mean                  |
//! | `variance` | value of the max-variance attribute     | coordinate median     |
//!
//! `random` draws `k` distinct records with a seeded ChaCha8 generator.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dataset::{compute_stats, normalize, DataMatrix, NormalizationMethod, NormalizationParams};
use crate::error::{Error, Result};
use crate::metrics::{euclidean, mean_of_rows, mean_point, midrange_point, CentroidSet, Point};

/// Generator used by [`init_random_macqueen`]; recorded in reports.
pub const PRNG_NAME: &str = "rand_chacha::ChaCha8Rng/seed_from_u64";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Strategy {
    #[serde(rename = "dp")]
    Dp,
    #[serde(rename = "origin")]
    OriginPoint,
    #[serde(rename = "random")]
    RandomMacQueen,
    #[serde(rename = "variance")]
    VarianceAlDaoud,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::Dp,
        Strategy::OriginPoint,
        Strategy::RandomMacQueen,
        Strategy::VarianceAlDaoud,
    ];

    /// Stable identifier used on the command line and in report files.
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Dp => "dp",
            Self::OriginPoint => "origin",
            Self::RandomMacQueen => "random",
            Self::VarianceAlDaoud => "variance",
        }
    }

    pub fn is_deterministic(self) -> bool {
        self != Self::RandomMacQueen
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|st| st.as_str() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "initializer",
                value: s.to_owned(),
            })
    }
}

/// Which data the DP sort keys are computed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SortSpace {
    #[default]
    Normalized,
    /// Raw-space distances to the raw mean; centroids are still normalized
    /// midranges.
    Raw,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InitSpec {
    pub strategy: Strategy,
    pub k: usize,
    /// Required by, and only meaningful for, `random`.
    pub seed: Option<u64>,
    /// Used by `dp` only.
    pub normalization: NormalizationMethod,
    /// Used by `dp` only.
    pub sort_space: SortSpace,
}

impl InitSpec {
    pub fn new(strategy: Strategy, k: usize) -> Self {
        Self {
            strategy,
            k,
            seed: None,
            normalization: NormalizationMethod::MaxAbs,
            sort_space: SortSpace::Normalized,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidK(self.k));
        }
        match (self.strategy, self.seed) {
            (Strategy::RandomMacQueen, None) => Err(Error::InvalidExperiment(
                "random initializer requires a seed".into(),
            )),
            (s, Some(_)) if s != Strategy::RandomMacQueen => Err(Error::InvalidExperiment(
                format!("{s} initializer does not take a seed"),
            )),
            _ => Ok(()),
        }
    }
}

/// Balanced split of `n` sorted positions into `k` contiguous blocks.
///
/// Each block gets `n / k` positions and the first `n % k` blocks get one
/// extra, so the nearest records land in the (possibly larger) first block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionPlan {
    sizes: Vec<usize>,
}

impl PartitionPlan {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        Ok(Self {
            sizes: partition_sizes(n, k)?,
        })
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Position ranges into the sorted order, one per block.
    pub fn blocks(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.sizes
            .iter()
            .map(|&s| {
                let r = start..start + s;
                start += s;
                r
            })
            .collect()
    }
}

pub fn partition_sizes(n: usize, k: usize) -> Result<Vec<usize>> {
    if k == 0 {
        return Err(Error::InvalidK(0));
    }
    if k > n {
        return Err(Error::KExceedsN { k, n });
    }
    let (base, extra) = (n / k, n % k);
    Ok((0..k).map(|j| base + usize::from(j < extra)).collect())
}

fn check_k(m: &DataMatrix, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidK(0));
    }
    if k > m.rows() {
        return Err(Error::KExceedsN { k, n: m.rows() });
    }
    Ok(())
}

/// Row indices sorted ascending by key; stable, so ties keep input order.
fn stable_order(keys: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&a, &b| keys[a].total_cmp(&keys[b]));
    order
}

fn summarize_blocks(
    m: &DataMatrix,
    order: &[usize],
    k: usize,
    summary: impl Fn(&DataMatrix, &[usize]) -> Result<Point>,
) -> Result<CentroidSet> {
    let plan = PartitionPlan::new(m.rows(), k)?;
    let points = plan
        .blocks()
        .into_iter()
        .map(|r| summary(m, &order[r]))
        .collect::<Result<Vec<_>>>()?;
    CentroidSet::from_points(points)
}

fn distances_to(m: &DataMatrix, reference: &[f64]) -> Vec<f64> {
    m.iter_rows()
        .map(|row| euclidean(row, reference).expect("reference has the data dimension"))
        .collect()
}

/// Output of [`init_dp`].
#[derive(Debug, Clone, PartialEq)]
pub struct DpSeeding {
    /// Initial centroids in normalized space.
    pub centroids: CentroidSet,
    pub params: NormalizationParams,
    /// Row indices in ascending distance order.
    pub order: Vec<usize>,
    /// Distance of each row (input order) to the reference point.
    pub distances: Vec<f64>,
}

/// Distance-partition seeding.
///
/// Normalizes the data, measures each record's distance to the mean record,
/// sorts ascending, splits the order into balanced contiguous blocks, and
/// takes the midrange of each block.
pub fn init_dp(
    m: &DataMatrix,
    k: usize,
    normalization: NormalizationMethod,
    sort_space: SortSpace,
) -> Result<DpSeeding> {
    check_k(m, k)?;
    let (normalized, params) = normalize(m, normalization)?;
    let keyed = match sort_space {
        SortSpace::Normalized => &normalized,
        SortSpace::Raw => m,
    };
    let reference = mean_point(keyed);
    let distances = distances_to(keyed, reference.coords());
    let order = stable_order(&distances);
    let centroids = summarize_blocks(&normalized, &order, k, midrange_point)?;
    Ok(DpSeeding {
        centroids,
        params,
        order,
        distances,
    })
}

/// Origin-point seeding on raw data: sort by norm, average each block.
pub fn init_origin_point(m: &DataMatrix, k: usize) -> Result<CentroidSet> {
    check_k(m, k)?;
    let origin = vec![0.0; m.cols()];
    let order = stable_order(&distances_to(m, &origin));
    summarize_blocks(m, &order, k, mean_of_rows)
}

/// `k` distinct records drawn uniformly without replacement.
pub fn init_random_macqueen(m: &DataMatrix, k: usize, seed: u64) -> Result<CentroidSet> {
    check_k(m, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picked = rand::seq::index::sample(&mut rng, m.rows(), k);
    CentroidSet::from_rows(&picked.iter().map(|i| m.row(i)).collect::<Vec<_>>())
}

/// Variance-split seeding: sort by the attribute with the largest variance,
/// split into balanced blocks, take the coordinate-wise median of each.
pub fn init_variance_aldaoud(m: &DataMatrix, k: usize) -> Result<CentroidSet> {
    check_k(m, k)?;
    let attr = compute_stats(m).max_variance_attribute();
    let keys: Vec<f64> = m.iter_rows().map(|r| r[attr]).collect();
    let order = stable_order(&keys);
    summarize_blocks(m, &order, k, median_of_rows)
}

fn median_of_rows(m: &DataMatrix, rows: &[usize]) -> Result<Point> {
    if rows.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let mut column = Vec::with_capacity(rows.len());
    let coords = (0..m.cols())
        .map(|j| {
            column.clear();
            column.extend(rows.iter().map(|&i| m.row(i)[j]));
            column.sort_by(f64::total_cmp);
            let mid = column.len() / 2;
            if column.len() % 2 == 1 {
                column[mid]
            } else {
                column[mid - 1] / 2.0 + column[mid] / 2.0
            }
        })
        .collect();
    Point::new(coords)
}

/// Initial centroids plus, for `dp`, the normalization they live in.
#[derive(Debug, Clone, PartialEq)]
pub struct Seeding {
    pub centroids: CentroidSet,
    /// `Some` when the centroids are in normalized space (`dp`); `None` when
    /// they are in the space of the input matrix.
    pub normalization: Option<NormalizationParams>,
}

/// Runs the strategy named in `spec`.
pub fn initialize(m: &DataMatrix, spec: &InitSpec) -> Result<Seeding> {
    spec.validate()?;
    let centroids = match spec.strategy {
        Strategy::Dp => {
            let dp = init_dp(m, spec.k, spec.normalization, spec.sort_space)?;
            return Ok(Seeding {
                centroids: dp.centroids,
                normalization: Some(dp.params),
            });
        }
        Strategy::OriginPoint => init_origin_point(m, spec.k)?,
        Strategy::RandomMacQueen => {
            init_random_macqueen(m, spec.k, spec.seed.expect("validated"))?
        }
        Strategy::VarianceAlDaoud => init_variance_aldaoud(m, spec.k)?,
    };
    Ok(Seeding {
        centroids,
        normalization: None,
    })
}
