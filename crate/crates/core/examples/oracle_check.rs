//! Compare Lloyd's local optimum with the exhaustive optimum on random tiny
//! instances.
//!
//! ```bash
//! cargo run -p dpkmeans --example oracle_check
//! ```

use dpkmeans::dataset::DataMatrix;
use dpkmeans::init::{init_origin_point, init_random_macqueen};
use dpkmeans::lloyd::{run_lloyd, LloydConfig};
use dpkmeans::oracle::brute_force;
use dpkmeans::verify::{run_verification, VerifyConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> dpkmeans::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    println!("{:>3} {:>2} {:>12} {:>12} {:>12} {:>9}", "n", "k", "optimum", "origin", "random", "labelings");
    for _ in 0..8 {
        let n = rng.random_range(4..=9);
        let k = rng.random_range(2..=3);
        let values = (0..n * 2).map(|_| rng.random_range(0.0..10.0)).collect();
        let data = DataMatrix::new(n, 2, values)?;

        let best = brute_force(&data, k)?;
        let origin = run_lloyd(&data, &init_origin_point(&data, k)?, &LloydConfig::default())?;
        let random = run_lloyd(&data, &init_random_macqueen(&data, k, rng.random())?, &LloydConfig::default())?;
        println!(
            "{n:>3} {k:>2} {:>12.4} {:>12.4} {:>12.4} {:>9}",
            best.optimal_sse, origin.sse_model_space, random.sse_model_space, best.enumerated_count
        );
    }

    println!();
    for check in run_verification(&VerifyConfig { instances: 100, seed: 0 })? {
        println!("{}: {} checked, {} violations", check.name, check.checked, check.violations);
    }
    Ok(())
}
