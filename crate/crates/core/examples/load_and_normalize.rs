//! Load a bundled dataset, inspect per-attribute statistics and normalize it.
//!
//! ```bash
//! cargo run -p dpkmeans --example load_and_normalize -- ionosphere
//! ```

use std::path::PathBuf;

use dpkmeans::dataset::{compute_stats, descriptor, normalize, NormalizationMethod};

fn main() -> dpkmeans::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "iris".to_owned());
    let data_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let data = descriptor(&name)?.load(&data_dir)?;
    println!("{name}: {} records x {} attributes", data.rows(), data.cols());

    let stats = compute_stats(&data);
    println!("{:>5} {:>10} {:>10} {:>10} {:>10}", "attr", "min", "max", "mean", "variance");
    for j in 0..data.cols().min(8) {
        println!(
            "{j:>5} {:>10.4} {:>10.4} {:>10.4} {:>10.4}",
            stats.min[j], stats.max[j], stats.mean[j], stats.variance[j]
        );
    }

    for method in [NormalizationMethod::MaxAbs, NormalizationMethod::MinMax] {
        let (normalized, params) = normalize(&data, method)?;
        let after = compute_stats(&normalized);
        let range = after.min.iter().copied().fold(f64::INFINITY, f64::min)
            ..after.max.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        println!("{method:?}: values now in [{:.3}, {:.3}], first scale {}", range.start, range.end, params.scale[0]);
    }
    Ok(())
}
