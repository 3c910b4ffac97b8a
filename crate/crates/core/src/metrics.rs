//! Distance, centroid, and SSE kernels shared by the initializers, the Lloyd
//! engine, and the oracle.
//!
//! All sums run in row-major order so results are bit-stable across runs.

use serde::{Deserialize, Serialize};

use crate::dataset::DataMatrix;
use crate::error::{Error, Result};
use crate::lloyd::Assignment;

/// A single point in attribute space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFiniteValue { row: 0, col: 0 });
        }
        Ok(Self(coords))
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl AsRef<[f64]> for Point {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// `k` centroids of equal dimension, indexed by cluster.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentroidSet {
    k: usize,
    dim: usize,
    values: Vec<f64>,
}

impl CentroidSet {
    pub fn new(k: usize, dim: usize, values: Vec<f64>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidK(0));
        }
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        if values.len() != k * dim {
            return Err(Error::DimensionMismatch {
                expected: k * dim,
                found: values.len(),
            });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue {
                row: pos / dim,
                col: pos % dim,
            });
        }
        Ok(Self { k, dim, values })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.first().map_or(0, |r| r.as_ref().len());
        let mut values = Vec::with_capacity(rows.len() * dim);
        for r in rows {
            let r = r.as_ref();
            if r.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.len(),
                });
            }
            values.extend_from_slice(r);
        }
        Self::new(rows.len(), dim, values)
    }

    pub fn from_points(points: Vec<Point>) -> Result<Self> {
        Self::from_rows(&points)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn centroid(&self, j: usize) -> &[f64] {
        &self.values[j * self.dim..(j + 1) * self.dim]
    }

    pub(crate) fn centroid_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.values[j * self.dim..(j + 1) * self.dim]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.values.chunks_exact(self.dim)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.iter().map(<[f64]>::to_vec).collect()
    }

    /// Reorders clusters so that new cluster `j` is old cluster `order[j]`.
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        let mut values = Vec::with_capacity(self.values.len());
        for &j in order {
            if j >= self.k {
                return Err(Error::IndexOutOfRange { index: j, k: self.k });
            }
            values.extend_from_slice(self.centroid(j));
        }
        Self::new(order.len(), self.dim, values)
    }

    /// Multiplies every coordinate by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.k, self.dim, self.values.iter().map(|v| v * factor).collect())
    }
}

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

pub fn euclidean(x: &[f64], c: &[f64]) -> Result<f64> {
    squared_euclidean(x, c).map(f64::sqrt)
}

pub fn squared_euclidean(x: &[f64], c: &[f64]) -> Result<f64> {
    check_dims(x.len(), c.len())?;
    Ok(sq_dist(x, c))
}

/// Unchecked squared distance; callers guarantee equal lengths.
#[inline]
pub(crate) fn sq_dist(x: &[f64], c: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), c.len());
    x.iter().zip(c).map(|(a, b)| (a - b) * (a - b)).sum()
}

/// Coordinate-wise arithmetic mean of all rows.
pub fn mean_point(m: &DataMatrix) -> Point {
    let mut sum = vec![0.0; m.cols()];
    for row in m.iter_rows() {
        for (s, v) in sum.iter_mut().zip(row) {
            *s += v;
        }
    }
    let n = m.rows() as f64;
    Point(sum.into_iter().map(|s| s / n).collect())
}

/// Coordinate-wise arithmetic mean over a subset of rows.
pub fn mean_of_rows(m: &DataMatrix, rows: &[usize]) -> Result<Point> {
    if rows.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let mut sum = vec![0.0; m.cols()];
    for &i in rows {
        for (s, v) in sum.iter_mut().zip(m.row(i)) {
            *s += v;
        }
    }
    let n = rows.len() as f64;
    Ok(Point(sum.into_iter().map(|s| s / n).collect()))
}

/// Per attribute, `(min + max) / 2` over the given rows.
pub fn midrange_point(m: &DataMatrix, rows: &[usize]) -> Result<Point> {
    let (&first, rest) = rows.split_first().ok_or(Error::EmptyPartition)?;
    let mut lo = m.row(first).to_vec();
    let mut hi = lo.clone();
    for &i in rest {
        for (j, &v) in m.row(i).iter().enumerate() {
            lo[j] = lo[j].min(v);
            hi[j] = hi[j].max(v);
        }
    }
    // halve before adding so extreme magnitudes cannot overflow
    Ok(Point(
        lo.iter().zip(&hi).map(|(a, b)| a / 2.0 + b / 2.0).collect(),
    ))
}

/// Sum of squared distances from each row to the centroid it is assigned to.
///
/// Centroids are used as given, not recomputed from the assignment.
pub fn sse(m: &DataMatrix, cs: &CentroidSet, a: &Assignment) -> Result<f64> {
    check_dims(m.cols(), cs.dim())?;
    check_dims(m.rows(), a.len())?;
    let mut total = 0.0;
    for (row, &label) in m.iter_rows().zip(a.labels()) {
        if label >= cs.k() {
            return Err(Error::IndexOutOfRange {
                index: label,
                k: cs.k(),
            });
        }
        total += sq_dist(row, cs.centroid(label));
    }
    Ok(total)
}
