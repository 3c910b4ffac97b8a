//! Run Lloyd iteration by hand on a small matrix and print the SSE trace,
//! then show what the empty-cluster policies do on a seeding that starves a
//! cluster.
//!
//! ```bash
//! cargo run -p dpkmeans --example lloyd_iteration
//! ```

use dpkmeans::dataset::DataMatrix;
use dpkmeans::lloyd::{run_lloyd, EmptyClusterPolicy, LloydConfig};
use dpkmeans::metrics::CentroidSet;

fn main() -> dpkmeans::Result<()> {
    let data = DataMatrix::from_rows(&[
        [1.0, 1.0],
        [1.5, 2.0],
        [3.0, 4.0],
        [5.0, 7.0],
        [3.5, 5.0],
        [4.5, 5.0],
        [3.5, 4.5],
    ])?;
    let start = CentroidSet::from_rows(&[[1.0, 1.0], [5.0, 7.0]])?;
    let r = run_lloyd(&data, &start, &LloydConfig::default())?;
    println!("labels     {:?}", r.assignment.labels());
    println!("centroids  {:.3?}", r.centroids.to_rows());
    println!("trace      {:.4?}", r.sse_trace);
    println!("{} after {} iterations", r.converged, r.iterations);

    // both seeds sit to the left of every record, so one cluster starts empty
    let line = DataMatrix::from_rows(&[[1.0], [2.0], [10.0], [11.0]])?;
    let starved = CentroidSet::from_rows(&[[-5.0], [-4.0]])?;
    for policy in [EmptyClusterPolicy::KeepPrevious, EmptyClusterPolicy::ReseedFarthest] {
        let cfg = LloydConfig {
            empty_cluster_policy: policy,
            ..LloydConfig::default()
        };
        let r = run_lloyd(&line, &starved, &cfg)?;
        println!(
            "{policy:?}: sse {} with {} empty-cluster events, centroids {:?}",
            r.sse_model_space,
            r.empty_cluster_events,
            r.centroids.values()
        );
    }
    Ok(())
}
