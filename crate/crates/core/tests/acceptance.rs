//! Acceptance criteria. Each test prints one `criterion N: PASS|FAIL|MISS`
//! line; run with `cargo test -p dpkmeans --test acceptance -- --nocapture`
//! to see them.

mod common;

use std::time::Instant;

use common::{blobs, canonical, data_dir, rel_close, uniform};
use dpkmeans::bench::{compare_methods, run_experiment, CompareMode, DatasetRef, ExperimentSpec};
use dpkmeans::dataset::{descriptor, inverse_transform, normalize, DataMatrix, NormalizationMethod};
use dpkmeans::init::{init_dp, init_origin_point, init_random_macqueen, init_variance_aldaoud, initialize, InitSpec, SortSpace, Strategy};
use dpkmeans::lloyd::{assign, run_lloyd, LloydConfig};
use dpkmeans::metrics::{euclidean, sse, CentroidSet};
use dpkmeans::oracle::{brute_force, naive_assign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, pass: bool, detail: impl std::fmt::Display) {
    println!("criterion {n}: {} {detail}", if pass { "PASS" } else { "FAIL" });
}

fn load(name: &str) -> Option<DataMatrix> {
    descriptor(name).unwrap().load(data_dir()).ok()
}

/// Initial centroids in the space the harness clusters each strategy in:
/// normalized for dp, raw otherwise. Returns (data to cluster, centroids).
fn seeded(m: &DataMatrix, strategy: Strategy, k: usize, seed: u64) -> (DataMatrix, CentroidSet) {
    let mut spec = InitSpec::new(strategy, k);
    if strategy == Strategy::RandomMacQueen {
        spec.seed = Some(seed);
    }
    let s = initialize(m, &spec).unwrap();
    match s.normalization {
        Some(p) => (p.apply(m).unwrap(), s.centroids),
        None => (m.clone(), s.centroids),
    }
}

#[test]
fn criterion_1_sse_monotonicity() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut runs, mut violations, mut steps) = (0, 0, 0);
    for i in 0..500 {
        let k = rng.random_range(2..=6);
        let n = rng.random_range(k..=200);
        let d = rng.random_range(1..=10);
        let m = if i % 2 == 0 { blobs(&mut rng, n, d) } else { uniform(&mut rng, n, d) };
        for strategy in Strategy::ALL {
            let (data, init) = seeded(&m, strategy, k, rng.random());
            let r = run_lloyd(&data, &init, &LloydConfig::default()).unwrap();
            runs += 1;
            steps += r.sse_trace.len();
            violations += r.sse_trace.windows(2).filter(|w| w[1] > w[0]).count();
        }
    }
    let secs = started.elapsed().as_secs_f64();
    let pass = violations == 0 && secs < 30.0;
    report(1, pass, format!("{runs} runs, {steps} sse evaluations, {violations} increases, {secs:.2}s"));
    assert!(pass);
}

#[test]
fn criterion_2_oracle_equivalence() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let instances = 300;
    let (mut assign_checks, mut assign_mismatch) = (0, 0);
    let (mut below_optimum, mut equality_cases, mut equality_misses) = (0, 0, 0);
    for _ in 0..instances {
        let k = rng.random_range(2..=3);
        let n = rng.random_range(k..=8);
        let d = rng.random_range(1..=2);
        let m = uniform(&mut rng, n, d);
        let oracle = brute_force(&m, k).unwrap();
        let optimal = canonical(oracle.optimal_assignment.labels());

        // arbitrary centroids, including off-data ones
        let random_cs = uniform(&mut rng, k, d);
        let random_cs = CentroidSet::new(k, d, random_cs.values().to_vec()).unwrap();
        assign_checks += 1;
        if assign(&m, &random_cs).unwrap() != naive_assign(&m, &random_cs).unwrap() {
            assign_mismatch += 1;
        }

        for strategy in Strategy::ALL {
            let mut spec = InitSpec::new(strategy, k);
            if strategy == Strategy::RandomMacQueen {
                spec.seed = Some(rng.random());
            }
            let s = initialize(&m, &spec).unwrap();
            let init = match &s.normalization {
                Some(p) => inverse_transform(&s.centroids, p).unwrap(),
                None => s.centroids,
            };
            let initial = assign(&m, &init).unwrap();
            assign_checks += 1;
            if initial != naive_assign(&m, &init).unwrap() {
                assign_mismatch += 1;
            }
            let r = run_lloyd(&m, &init, &LloydConfig::default()).unwrap();
            if r.sse_model_space < oracle.optimal_sse && !rel_close(r.sse_model_space, oracle.optimal_sse, 1e-9) {
                below_optimum += 1;
            }
            if canonical(initial.labels()) == optimal {
                equality_cases += 1;
                if !rel_close(r.sse_model_space, oracle.optimal_sse, 1e-9) {
                    equality_misses += 1;
                }
            }
        }
    }
    let secs = started.elapsed().as_secs_f64();
    let pass = assign_mismatch == 0 && below_optimum == 0 && equality_misses == 0 && equality_cases > 0 && secs < 60.0;
    report(
        2,
        pass,
        format!(
            "{instances} instances, {assign_checks} assign checks ({assign_mismatch} mismatches), \
             {below_optimum} runs below optimum, {equality_cases} optimal-start runs ({equality_misses} off optimum), {secs:.2}s"
        ),
    );
    assert!(pass);
}

fn iris_spec(inits: Vec<Strategy>, seeds: Vec<u64>) -> ExperimentSpec {
    let mut spec = ExperimentSpec::new(vec![DatasetRef::Registry("iris".into())], inits, vec![3, 4]);
    spec.data_dir = data_dir();
    spec.seeds = seeds;
    spec
}

#[test]
fn criterion_3_determinism() {
    let iris = load("iris").expect("bundled iris.data");
    let mut identical = true;
    for k in [3, 4] {
        let a = init_dp(&iris, k, NormalizationMethod::MaxAbs, SortSpace::Normalized).unwrap();
        let b = init_dp(&iris, k, NormalizationMethod::MaxAbs, SortSpace::Normalized).unwrap();
        identical &= a == b;
        identical &= init_origin_point(&iris, k).unwrap() == init_origin_point(&iris, k).unwrap();
        identical &= init_variance_aldaoud(&iris, k).unwrap() == init_variance_aldaoud(&iris, k).unwrap();
        identical &= init_random_macqueen(&iris, k, 17).unwrap() == init_random_macqueen(&iris, k, 17).unwrap();
    }

    let deterministic = iris_spec(vec![Strategy::Dp, Strategy::OriginPoint, Strategy::VarianceAlDaoud], vec![]);
    let first = run_experiment(&deterministic).unwrap();
    let second = run_experiment(&deterministic).unwrap();
    let det_json = first.to_deterministic_json().unwrap();
    identical &= first.failed_cells.is_empty() && det_json == second.to_deterministic_json().unwrap();

    let random = iris_spec(vec![Strategy::RandomMacQueen], vec![5]);
    let r1 = run_experiment(&random).unwrap().to_deterministic_json().unwrap();
    let r2 = run_experiment(&random).unwrap().to_deterministic_json().unwrap();
    identical &= r1 == r2;

    report(3, identical, format!("iris reports {} bytes, byte-identical across reruns", det_json.len()));
    assert!(identical);
}

#[test]
fn criterion_4_hand_computed_fixtures() {
    let toy = DataMatrix::new(6, 1, vec![1.0, 2.0, 3.0, 4.0, 10.0, 12.0]).unwrap();
    let mut results = Vec::new();

    let dp = init_dp(&toy, 2, NormalizationMethod::MaxAbs, SortSpace::Normalized).unwrap();
    let v = dp.centroids.values();
    results.push(("dp", (v[0] - 0.25).abs() < 1e-9 && (v[1] - 13.0 / 24.0).abs() < 1e-9));

    let origin = init_origin_point(&toy, 2).unwrap();
    let v = origin.values();
    results.push(("origin", (v[0] - 2.0).abs() < 1e-9 && (v[1] - 26.0 / 3.0).abs() < 1e-9));

    let grid = DataMatrix::from_rows(&[[1.0, 10.0], [2.0, 20.0], [3.0, 30.0], [4.0, 40.0]]).unwrap();
    let var = init_variance_aldaoud(&grid, 2).unwrap();
    let expected = [1.5, 15.0, 3.5, 35.0];
    results.push(("variance", var.values().iter().zip(expected).all(|(a, b)| (a - b).abs() < 1e-9)));

    let four = DataMatrix::new(4, 1, vec![1.0, 2.0, 10.0, 11.0]).unwrap();
    let init = CentroidSet::from_rows(&[[1.0], [11.0]]).unwrap();
    let r = run_lloyd(&four, &init, &LloydConfig::default()).unwrap();
    let c = r.centroids.values();
    results.push((
        "lloyd",
        (c[0] - 1.5).abs() < 1e-9 && (c[1] - 10.5).abs() < 1e-9 && (r.sse_model_space - 1.0).abs() < 1e-9,
    ));

    let pass = results.iter().all(|(_, ok)| *ok);
    report(4, pass, format!("{results:?}"));
    assert!(pass);
}

/// Sorted keys separated by more than `tol` relative, so scaling cannot
/// reorder them.
fn distinct(keys: &[f64], tol: f64) -> bool {
    let mut k = keys.to_vec();
    k.sort_by(f64::total_cmp);
    k.windows(2).all(|w| w[1] - w[0] > tol * w[1].abs().max(1e-300))
}

fn close_all(a: &[f64], b: &[f64], tol: f64) -> bool {
    // relative, with an absolute floor for coordinates at zero
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol * x.abs().max(y.abs()) + 1e-15)
}

#[test]
fn criterion_5_scale_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut checked, mut failures) = (0, Vec::new());
    while checked < 50 {
        let k = rng.random_range(2..=5);
        let n = rng.random_range(k.max(10)..=100);
        let d = rng.random_range(1..=5);
        let m = blobs(&mut rng, n, d);
        let s = 10f64.powf(rng.random_range(-2.0..2.0));
        let scaled = m.scaled(s).unwrap();

        let dp = init_dp(&m, k, NormalizationMethod::MaxAbs, SortSpace::Normalized).unwrap();
        let norms: Vec<f64> = m.iter_rows().map(|r| euclidean(r, &vec![0.0; d]).unwrap()).collect();
        if !distinct(&dp.distances, 1e-9) || !distinct(&norms, 1e-9) {
            continue;
        }
        checked += 1;

        let dp_s = init_dp(&scaled, k, NormalizationMethod::MaxAbs, SortSpace::Normalized).unwrap();
        if dp.order != dp_s.order || !close_all(dp.centroids.values(), dp_s.centroids.values(), 1e-9) {
            failures.push(format!("dp instance {checked}"));
        }

        let o = init_origin_point(&m, k).unwrap();
        let o_s = init_origin_point(&scaled, k).unwrap();
        if !close_all(o.scaled(s).unwrap().values(), o_s.values(), 1e-9) {
            failures.push(format!("origin centroids instance {checked}"));
        }
        let initial_sse = sse(&m, &o, &assign(&m, &o).unwrap()).unwrap();
        let initial_sse_s = sse(&scaled, &o_s, &assign(&scaled, &o_s).unwrap()).unwrap();
        let r = run_lloyd(&m, &o, &LloydConfig::default()).unwrap();
        let r_s = run_lloyd(&scaled, &o_s, &LloydConfig::default()).unwrap();
        if !rel_close(initial_sse * s * s, initial_sse_s, 1e-9) || !rel_close(r.sse_raw_space * s * s, r_s.sse_raw_space, 1e-9) {
            failures.push(format!("origin sse instance {checked}"));
        }
    }
    let pass = failures.is_empty();
    report(5, pass, format!("{checked} instances, failures: {failures:?}"));
    assert!(pass);
}

/// Sum of unsquared distances from each record to its centroid.
fn sum_of_distances(m: &DataMatrix, cs: &CentroidSet, labels: &[usize]) -> f64 {
    m.iter_rows().zip(labels).map(|(r, &l)| euclidean(r, cs.centroid(l)).unwrap()).sum()
}

#[test]
fn criterion_6_iris_k4_targets() {
    let iris = load("iris").expect("bundled iris.data");
    let within = |got: f64, target: f64| (got - target).abs() <= 0.25 * target;
    let mut lines = Vec::new();

    let (data, init) = seeded(&iris, Strategy::Dp, 4, 0);
    let dp = run_lloyd(&data, &init, &LloydConfig::default()).unwrap();
    lines.push(("dp model-space", dp.sse_model_space, 10.606, sum_of_distances(&data, &dp.centroids, dp.assignment.labels())));

    let origin_init = init_origin_point(&iris, 4).unwrap();
    let origin = run_lloyd(&iris, &origin_init, &LloydConfig::default()).unwrap();
    lines.push(("origin raw-space", origin.sse_raw_space, 83.786, sum_of_distances(&iris, &origin.centroids, origin.assignment.labels())));

    let best = (0..30)
        .map(|seed| {
            let init = init_random_macqueen(&iris, 4, seed).unwrap();
            run_lloyd(&iris, &init, &LloydConfig::default()).unwrap()
        })
        .min_by(|a, b| a.sse_raw_space.total_cmp(&b.sse_raw_space))
        .unwrap();
    lines.push(("random best-of-30 raw-space", best.sse_raw_space, 84.677, sum_of_distances(&iris, &best.centroids, best.assignment.labels())));

    // best-effort: a miss is reported, not failed
    for (name, got, target, sum_dist) in &lines {
        assert!(got.is_finite() && *got >= 0.0);
        let status = if within(*got, *target) { "PASS" } else { "MISS" };
        println!(
            "criterion 6: {status} {name} sse {got:.3} vs target {target} +/-25%; sum of unsquared distances {sum_dist:.3}"
        );
    }
}

#[test]
fn criterion_7_ordering_at_k4() {
    let mut verdicts = Vec::new();
    for name in ["iris", "ionosphere", "seeds", "user_modeling"] {
        if load(name).is_none() {
            println!("criterion 7: NOT RUN {name}: dataset file not available in {}", data_dir().display());
            verdicts.push((name, false));
            continue;
        }
        let mut spec = ExperimentSpec::new(
            vec![DatasetRef::Registry(name.into())],
            vec![Strategy::RandomMacQueen, Strategy::OriginPoint, Strategy::Dp],
            vec![4],
        );
        spec.data_dir = data_dir();
        let report = run_experiment(&spec).unwrap();
        assert!(report.failed_cells.is_empty());
        let ranking = &compare_methods(&report, CompareMode::OwnSpace).unwrap()[0];
        let summary: Vec<String> = ranking
            .methods
            .iter()
            .map(|m| format!("{}[{}]={:.3}", m.initializer, m.space, m.sse))
            .collect();
        let ok = ranking.winner() == Strategy::Dp;
        println!("criterion 7: {} {name}: {}", if ok { "PASS" } else { "FAIL" }, summary.join(" < "));
        verdicts.push((name, ok));
    }
    let pass = verdicts.iter().all(|(_, ok)| *ok);
    report(7, pass, format!("{verdicts:?}"));
    assert!(pass, "dp is not the lowest-SSE method on every dataset: {verdicts:?}");
}

#[test]
fn criterion_8_multi_restart_iris_k3() {
    let iris = load("iris").expect("bundled iris.data");
    let best = (0..100)
        .map(|seed| {
            let init = init_random_macqueen(&iris, 3, seed).unwrap();
            run_lloyd(&iris, &init, &LloydConfig::default()).unwrap().sse_raw_space
        })
        .fold(f64::INFINITY, f64::min);
    let pass = best <= 79.0;
    report(8, pass, format!("best raw sse over 100 restarts = {best:.4} (threshold 79.0)"));
    assert!(pass);
}

#[test]
fn bundled_datasets_have_registry_shapes() {
    for name in ["iris", "ionosphere"] {
        let m = load(name).unwrap_or_else(|| panic!("{name} bundled"));
        let d = descriptor(name).unwrap();
        assert_eq!((m.rows(), m.cols()), (d.records, d.attributes));
    }
    // ionosphere's second attribute is constant zero
    let iono = load("ionosphere").unwrap();
    let (_, p) = normalize(&iono, NormalizationMethod::MaxAbs).unwrap();
    assert_eq!(p.scale[1], 1.0);
}
