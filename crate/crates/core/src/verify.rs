//! Randomized self-check of the engine against the brute-force oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dataset::DataMatrix;
use crate::error::Result;
use crate::init::{initialize, InitSpec, Strategy};
use crate::lloyd::{assign, run_lloyd, LloydConfig};
use crate::oracle::{brute_force, naive_assign};

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub instances: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            instances: 200,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub checked: usize,
    pub violations: usize,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Uniform random matrix with coordinates in `[-10, 10)`.
pub fn random_matrix(rng: &mut impl Rng, n: usize, d: usize) -> DataMatrix {
    let values = (0..n * d).map(|_| rng.random_range(-10.0..10.0)).collect();
    DataMatrix::new(n, d, values).expect("finite values")
}

/// Runs the oracle suite on tiny random instances (n <= 8, d <= 2,
/// k in {2, 3}) with every initializer.
pub fn run_verification(cfg: &VerifyConfig) -> Result<Vec<CheckOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut assign_check = CheckOutcome {
        name: "assign matches naive_assign",
        checked: 0,
        violations: 0,
    };
    let mut optimum_check = CheckOutcome {
        name: "lloyd sse >= brute-force optimum",
        checked: 0,
        violations: 0,
    };
    let mut monotone_check = CheckOutcome {
        name: "sse trace non-increasing",
        checked: 0,
        violations: 0,
    };
    let mut fixed_point_check = CheckOutcome {
        name: "stable result is an assignment fixed point",
        checked: 0,
        violations: 0,
    };

    for _ in 0..cfg.instances {
        let k = rng.random_range(2..=3);
        let n = rng.random_range(k..=8);
        let d = rng.random_range(1..=2);
        let m = random_matrix(&mut rng, n, d);
        let optimum = brute_force(&m, k)?.optimal_sse;
        for strategy in Strategy::ALL {
            let mut spec = InitSpec::new(strategy, k);
            if strategy == Strategy::RandomMacQueen {
                spec.seed = Some(rng.random());
            }
            let seeding = initialize(&m, &spec)?;
            // dp seeds live in normalized space; cluster the raw data from
            // their raw-space image
            let init = match &seeding.normalization {
                Some(p) => crate::dataset::inverse_transform(&seeding.centroids, p)?,
                None => seeding.centroids,
            };

            assign_check.checked += 1;
            if assign(&m, &init)? != naive_assign(&m, &init)? {
                assign_check.violations += 1;
            }

            let result = run_lloyd(&m, &init, &LloydConfig::default())?;
            optimum_check.checked += 1;
            if result.sse_model_space < optimum * (1.0 - 1e-12) - 1e-12 {
                optimum_check.violations += 1;
            }
            monotone_check.checked += 1;
            if result.sse_trace.windows(2).any(|w| w[1] > w[0]) {
                monotone_check.violations += 1;
            }
            if result.converged == crate::lloyd::Convergence::MembershipStable {
                fixed_point_check.checked += 1;
                if assign(&m, &result.centroids)? != result.assignment {
                    fixed_point_check.violations += 1;
                }
            }
        }
    }
    Ok(vec![assign_check, optimum_check, monotone_check, fixed_point_check])
}
