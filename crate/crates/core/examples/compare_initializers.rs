//! Seed the same data with every initializer and look at the starting
//! centroids and the SSE Lloyd iteration ends at.
//!
//! ```bash
//! cargo run -p dpkmeans --example compare_initializers
//! ```

use std::path::PathBuf;

use dpkmeans::dataset::{descriptor, inverse_transform};
use dpkmeans::init::{initialize, InitSpec, Strategy};
use dpkmeans::lloyd::{run_lloyd, LloydConfig};

fn main() -> dpkmeans::Result<()> {
    let data_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let iris = descriptor("iris")?.load(&data_dir)?;
    let k = 3;

    for strategy in Strategy::ALL {
        let mut spec = InitSpec::new(strategy, k);
        if !strategy.is_deterministic() {
            spec = spec.with_seed(42);
        }
        let seeding = initialize(&iris, &spec)?;

        // dp seeds in normalized space; cluster there, score both ways
        let (data, mut result) = match &seeding.normalization {
            Some(params) => {
                let normalized = params.apply(&iris)?;
                let mut r = run_lloyd(&normalized, &seeding.centroids, &LloydConfig::default())?;
                r.rescore_raw(&iris, params)?;
                let raw_start = inverse_transform(&seeding.centroids, params)?;
                (raw_start, r)
            }
            None => {
                let r = run_lloyd(&iris, &seeding.centroids, &LloydConfig::default())?;
                (seeding.centroids.clone(), r)
            }
        };
        println!("{strategy}:");
        for c in data.iter() {
            println!("  start {c:.3?}");
        }
        result.sse_trace.truncate(4);
        println!(
            "  model sse {:.4}, raw sse {:.4}, {} iterations, first trace {:.3?}",
            result.sse_model_space, result.sse_raw_space, result.iterations, result.sse_trace
        );
    }
    Ok(())
}
