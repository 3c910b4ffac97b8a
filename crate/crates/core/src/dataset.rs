//! Numeric CSV ingest, per-attribute statistics, and normalization.
//!
//! Everything here operates on [`DataMatrix`], an immutable row-major table of
//! finite reals. Label columns are dropped at load time; only numeric
//! attributes are ever clustered.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::CentroidSet;

/// An `n x d` table of finite real observations, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl DataMatrix {
    pub fn new(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if values.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: values.len(),
            });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue {
                row: pos / cols,
                col: pos % cols,
            });
        }
        Ok(Self { rows, cols, values })
    }

    /// Builds a matrix from nested rows. Every row must have the same width.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut values = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            values.extend_from_slice(row);
        }
        Self::new(rows.len(), cols, values)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.values.chunks_exact(self.cols)
    }

    /// New matrix containing the given rows, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> Result<Self> {
        let mut values = Vec::with_capacity(indices.len() * self.cols);
        for &i in indices {
            values.extend_from_slice(self.row(i));
        }
        Self::new(indices.len(), self.cols, values)
    }

    /// Multiplies every cell by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.rows,
            self.cols,
            self.values.iter().map(|v| v * factor).collect(),
        )
    }
}

/// Per-attribute summary statistics. Variance is the population variance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttributeStats {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
    pub max_abs: Vec<f64>,
    pub mean: Vec<f64>,
    pub variance: Vec<f64>,
}

impl AttributeStats {
    /// Index of the attribute with the largest variance, lowest index on ties.
    pub fn max_variance_attribute(&self) -> usize {
        let mut best = 0;
        for (j, &v) in self.variance.iter().enumerate() {
            if v > self.variance[best] {
                best = j;
            }
        }
        best
    }
}

pub fn compute_stats(m: &DataMatrix) -> AttributeStats {
    let d = m.cols();
    let n = m.rows() as f64;
    let mut min = vec![f64::INFINITY; d];
    let mut max = vec![f64::NEG_INFINITY; d];
    let mut sum = vec![0.0; d];
    for row in m.iter_rows() {
        for (j, &v) in row.iter().enumerate() {
            min[j] = min[j].min(v);
            max[j] = max[j].max(v);
            sum[j] += v;
        }
    }
    // constant attributes get an exact mean and a zero variance
    let mean: Vec<f64> = (0..d)
        .map(|j| {
            if min[j] == max[j] {
                min[j]
            } else {
                (sum[j] / n).clamp(min[j], max[j])
            }
        })
        .collect();
    let mut sq = vec![0.0; d];
    for row in m.iter_rows() {
        for (j, &v) in row.iter().enumerate() {
            let dev = v - mean[j];
            sq[j] += dev * dev;
        }
    }
    let variance = (0..d)
        .map(|j| if min[j] == max[j] { 0.0 } else { sq[j] / n })
        .collect();
    let max_abs = (0..d).map(|j| min[j].abs().max(max[j].abs())).collect();
    AttributeStats {
        min,
        max,
        max_abs,
        mean,
        variance,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormalizationMethod {
    None,
    /// Divide each attribute by its largest absolute value, into `[-1, 1]`.
    #[default]
    MaxAbs,
    /// Affine map of each attribute onto `[0, 1]`.
    MinMax,
}

impl NormalizationMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::None => "none",
            Self::MaxAbs => "maxabs",
            Self::MinMax => "minmax",
        }
    }
}

impl fmt::Display for NormalizationMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NormalizationMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Self::None),
            "maxabs" | "max-abs" => Ok(Self::MaxAbs),
            "minmax" | "min-max" => Ok(Self::MinMax),
            _ => Err(Error::UnknownName {
                kind: "normalization method",
                value: s.to_owned(),
            }),
        }
    }
}

/// Per-attribute affine transform `normalized = (raw - offset) / scale`.
///
/// Scales are strictly positive; a degenerate attribute (all zeros for
/// max-abs, constant for min-max) gets scale 1 and passes through unchanged
/// apart from the offset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationParams {
    pub method: NormalizationMethod,
    pub scale: Vec<f64>,
    pub offset: Vec<f64>,
}

impl NormalizationParams {
    pub fn identity(dim: usize) -> Self {
        Self {
            method: NormalizationMethod::None,
            scale: vec![1.0; dim],
            offset: vec![0.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.scale.len()
    }

    pub fn apply(&self, m: &DataMatrix) -> Result<DataMatrix> {
        self.check_dim(m.cols())?;
        let values = m
            .iter_rows()
            .flat_map(|row| {
                row.iter()
                    .zip(self.scale.iter().zip(&self.offset))
                    .map(|(&v, (&s, &o))| (v - o) / s)
            })
            .collect();
        DataMatrix::new(m.rows(), m.cols(), values)
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found,
            });
        }
        Ok(())
    }
}

pub fn normalize(
    m: &DataMatrix,
    method: NormalizationMethod,
) -> Result<(DataMatrix, NormalizationParams)> {
    let params = fit_normalization(m, method);
    let normalized = match method {
        NormalizationMethod::None => m.clone(),
        _ => params.apply(m)?,
    };
    Ok((normalized, params))
}

/// Derives normalization parameters without transforming the data.
pub fn fit_normalization(m: &DataMatrix, method: NormalizationMethod) -> NormalizationParams {
    let d = m.cols();
    if method == NormalizationMethod::None {
        return NormalizationParams::identity(d);
    }
    let stats = compute_stats(m);
    let (scale, offset) = match method {
        NormalizationMethod::None => unreachable!(),
        NormalizationMethod::MaxAbs => (
            stats
                .max_abs
                .iter()
                .map(|&a| if a > 0.0 { a } else { 1.0 })
                .collect(),
            vec![0.0; d],
        ),
        NormalizationMethod::MinMax => (
            stats
                .min
                .iter()
                .zip(&stats.max)
                .map(|(&lo, &hi)| if hi > lo { hi - lo } else { 1.0 })
                .collect(),
            stats.min.clone(),
        ),
    };
    NormalizationParams {
        method,
        scale,
        offset,
    }
}

/// Maps model-space points back to raw attribute units.
pub fn inverse_transform(points: &CentroidSet, p: &NormalizationParams) -> Result<CentroidSet> {
    p.check_dim(points.dim())?;
    if p.method == NormalizationMethod::None {
        return Ok(points.clone());
    }
    let values = points
        .iter()
        .flat_map(|c| {
            c.iter()
                .zip(p.scale.iter().zip(&p.offset))
                .map(|(&v, (&s, &o))| v * s + o)
        })
        .collect();
    CentroidSet::new(points.k(), points.dim(), values)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvOptions {
    pub has_header: bool,
    /// Zero-based index of a column to drop (class labels).
    pub label_column: Option<usize>,
    pub delimiter: char,
}

impl Default for CsvOptions {
    fn default() -> Self {
        Self {
            has_header: false,
            label_column: None,
            delimiter: ',',
        }
    }
}

/// Loads a numeric CSV file. Blank lines are ignored; empty cells and the
/// UCI `?` marker are rejected as missing values.
pub fn load_csv(path: impl AsRef<Path>, options: &CsvOptions) -> Result<DataMatrix> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::FileNotFound(path.to_path_buf()),
        _ => Error::Io(e),
    })?;
    read_csv(file, options)
}

/// Parses CSV text from any reader; see [`load_csv`].
pub fn read_csv<R: std::io::Read>(reader: R, options: &CsvOptions) -> Result<DataMatrix> {
    if !options.delimiter.is_ascii() {
        return Err(Error::InvalidDelimiter(options.delimiter));
    }
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(options.has_header)
        .delimiter(options.delimiter as u8)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut width = None;
    let mut rows = 0;
    let mut values = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let expected = *width.get_or_insert(record.len());
        if record.len() != expected {
            return Err(Error::RaggedRows {
                line,
                expected,
                found: record.len(),
            });
        }
        if let Some(label) = options.label_column {
            if label >= expected {
                return Err(Error::LabelColumnOutOfRange {
                    column: label,
                    width: expected,
                });
            }
        }
        for (column, cell) in record.iter().enumerate() {
            if Some(column) == options.label_column {
                continue;
            }
            if cell.is_empty() || cell == "?" {
                return Err(Error::MissingValue { line, column });
            }
            match cell.parse::<f64>() {
                Ok(v) if v.is_finite() => values.push(v),
                _ => {
                    return Err(Error::NonNumericCell {
                        line,
                        column,
                        value: cell.to_owned(),
                    })
                }
            }
        }
        rows += 1;
    }
    let width = width.ok_or(Error::EmptyMatrix)?;
    let cols = width - usize::from(options.label_column.is_some());
    DataMatrix::new(rows, cols, values)
}

/// Layout of one of the built-in UCI datasets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DatasetDescriptor {
    pub name: &'static str,
    pub attributes: usize,
    pub records: usize,
    pub label_column: Option<usize>,
    /// File name looked up inside the data directory.
    pub file_name: &'static str,
    pub has_header: bool,
}

impl DatasetDescriptor {
    pub fn csv_options(&self) -> CsvOptions {
        CsvOptions {
            has_header: self.has_header,
            label_column: self.label_column,
            delimiter: ',',
        }
    }

    /// Loads the dataset from `data_dir` and checks its shape.
    pub fn load(&self, data_dir: impl AsRef<Path>) -> Result<DataMatrix> {
        let m = load_csv(data_dir.as_ref().join(self.file_name), &self.csv_options())?;
        if m.rows() != self.records || m.cols() != self.attributes {
            return Err(Error::ShapeMismatch {
                name: self.name.to_owned(),
                expected_rows: self.records,
                expected_cols: self.attributes,
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        Ok(m)
    }
}

const REGISTRY: [DatasetDescriptor; 4] = [
    DatasetDescriptor {
        name: "iris",
        attributes: 4,
        records: 150,
        label_column: Some(4),
        file_name: "iris.data",
        has_header: false,
    },
    DatasetDescriptor {
        name: "ionosphere",
        attributes: 34,
        records: 351,
        label_column: Some(34),
        file_name: "ionosphere.data",
        has_header: false,
    },
    DatasetDescriptor {
        name: "seeds",
        attributes: 7,
        records: 210,
        label_column: Some(7),
        file_name: "seeds.csv",
        has_header: false,
    },
    // UCI "User Knowledge Modeling", training sheet exported to CSV
    DatasetDescriptor {
        name: "user_modeling",
        attributes: 5,
        records: 258,
        label_column: Some(5),
        file_name: "user_modeling.csv",
        has_header: true,
    },
];

pub fn registry() -> &'static [DatasetDescriptor] {
    &REGISTRY
}

pub fn descriptor(name: &str) -> Result<&'static DatasetDescriptor> {
    REGISTRY
        .iter()
        .find(|d| d.name == name)
        .ok_or_else(|| Error::UnknownDataset(name.to_owned()))
}
