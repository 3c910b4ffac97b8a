#![allow(dead_code)]

use std::path::PathBuf;

use dpkmeans::dataset::DataMatrix;
use rand::Rng;

/// Bundled UCI files, or `DPKM_DATA_DIR` when set.
pub fn data_dir() -> PathBuf {
    std::env::var_os("DPKM_DATA_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

/// Points scattered around a few random centers, with a random per-attribute
/// scale so attributes differ in range.
pub fn blobs(rng: &mut impl Rng, n: usize, d: usize) -> DataMatrix {
    let centers = rng.random_range(1..=6);
    let means: Vec<Vec<f64>> = (0..centers)
        .map(|_| (0..d).map(|_| rng.random_range(-10.0..10.0)).collect())
        .collect();
    let scale: Vec<f64> = (0..d).map(|_| rng.random_range(0.1..20.0)).collect();
    let spread = rng.random_range(0.2..4.0);
    let mut values = Vec::with_capacity(n * d);
    for _ in 0..n {
        let c = &means[rng.random_range(0..centers)];
        for j in 0..d {
            values.push((c[j] + rng.random_range(-spread..spread)) * scale[j]);
        }
    }
    DataMatrix::new(n, d, values).unwrap()
}

pub fn uniform(rng: &mut impl Rng, n: usize, d: usize) -> DataMatrix {
    let values = (0..n * d).map(|_| rng.random_range(-10.0..10.0)).collect();
    DataMatrix::new(n, d, values).unwrap()
}

/// Relabels clusters by order of first appearance so partitions compare
/// independent of label names.
pub fn canonical(labels: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    labels
        .iter()
        .map(|l| {
            let next = map.len();
            *map.entry(*l).or_insert(next)
        })
        .collect()
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
