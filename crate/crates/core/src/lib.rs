//! k-means clustering with pluggable, mostly deterministic centroid
//! initialization.
//!
//! The pipeline is: load a numeric dataset ([`dataset`]), pick initial
//! centroids ([`init`]), refine them with Lloyd iteration ([`lloyd`]), and
//! score the result by SSE ([`metrics`]). [`oracle`] provides brute-force
//! ground truth for tiny instances and [`bench`] runs whole experiment grids
//! and renders reports.
//!
//! ```
//! use dpkmeans::dataset::{DataMatrix, NormalizationMethod};
//! use dpkmeans::init::{init_dp, SortSpace};
//! use dpkmeans::lloyd::{run_lloyd, LloydConfig};
//!
//! let data = DataMatrix::from_rows(&[[1.0], [2.0], [3.0], [4.0], [10.0], [12.0]])?;
//! let seeding = init_dp(&data, 2, NormalizationMethod::MaxAbs, SortSpace::Normalized)?;
//! let normalized = seeding.params.apply(&data)?;
//! let mut result = run_lloyd(&normalized, &seeding.centroids, &LloydConfig::default())?;
//! result.rescore_raw(&data, &seeding.params)?;
//! assert_eq!(result.assignment.labels(), &[0, 0, 0, 0, 1, 1]);
//! # Ok::<(), dpkmeans::Error>(())
//! ```

pub mod bench;
pub mod dataset;
mod error;
pub mod init;
pub mod lloyd;
pub mod metrics;
pub mod oracle;
pub mod verify;

pub use error::{Error, Result};
