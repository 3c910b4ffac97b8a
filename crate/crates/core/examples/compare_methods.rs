//! Rank initializers per (dataset, k). Strict mode refuses to mix model- and
//! raw-space SSE; raw mode forces a common space; own-space mode ranks anyway
//! and flags the result.
//!
//! ```bash
//! cargo run --release -p dpkmeans --example compare_methods
//! ```

use std::path::PathBuf;

use dpkmeans::bench::{compare_methods, run_experiment, ClusteringSpace, CompareMode, DatasetRef, ExperimentSpec};
use dpkmeans::init::Strategy;

fn main() -> dpkmeans::Result<()> {
    let datasets = vec![
        DatasetRef::Registry("iris".to_owned()),
        DatasetRef::Registry("ionosphere".to_owned()),
    ];
    let mut spec = ExperimentSpec::new(datasets, Strategy::ALL.to_vec(), vec![4]);
    spec.data_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let default_spaces = run_experiment(&spec)?;

    match compare_methods(&default_spaces, CompareMode::Strict) {
        Ok(_) => println!("strict: comparable"),
        Err(e) => println!("strict: {e}"),
    }

    for ranking in compare_methods(&default_spaces, CompareMode::OwnSpace)? {
        println!("{} k={} (mixed spaces: {})", ranking.dataset, ranking.k, ranking.mixed_spaces);
        for m in &ranking.methods {
            println!("  {:<9} {:<8} {:>12.4}  over {} runs", m.initializer.as_str(), format!("[{}]", m.space), m.sse, m.runs);
        }
    }

    spec.space = Some(ClusteringSpace::Raw);
    let raw = run_experiment(&spec)?;
    for ranking in compare_methods(&raw, CompareMode::Strict)? {
        println!("{} k={} all raw: winner {}", ranking.dataset, ranking.k, ranking.winner());
    }
    Ok(())
}
