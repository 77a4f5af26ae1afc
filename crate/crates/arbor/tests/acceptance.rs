//! Acceptance suite: one test per release criterion, each printing a
//! PASS line (run with `--nocapture` to see them). Tolerances are pinned
//! in the assertions.

use std::time::Instant;

use arbor::centrality::{centroid, descendant_counts, jordan_centrality_counts};
use arbor::estimators::{
    coupled_jordan_descendant, degree_ordering, descendant_ordering, jordan_ordering,
    reverse_dmc_ordering,
};
use arbor::experiment::{simulate, write_outputs, ExperimentConfig};
use arbor::oracle::{exact_risk, pa_descendant_pmf, urrt_descendant_pmf};
use arbor::risk::RiskSample;
use arbor::rng::{derive_seed, RngState};
use arbor::spectral::{default_max_iter, fiedler_vector};
use arbor::tree::LabeledTree;
use arbor::treegen::{generate, generate_urrt, shuffle_labels};
use arbor::{Estimator, Model};

const ORACLE_ESTIMATORS: [Estimator; 4] = [
    Estimator::Jordan,
    Estimator::Descendant,
    Estimator::Degree,
    Estimator::Random,
];

fn mean_and_se(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Monte Carlo mean risk at 1e5 replicates agrees with the exact oracle
/// within 3 standard errors, for n in {4,5,6}, both models, four
/// estimators, alpha in {1, 1.5}; under 2 minutes per model.
#[test]
fn criterion_1_oracle_equivalence() {
    for model in Model::ALL {
        let start = Instant::now();
        let config = ExperimentConfig {
            model,
            sizes: vec![4, 5, 6],
            alphas: vec![1.0, 1.5],
            estimators: ORACLE_ESTIMATORS.to_vec(),
            replicates: 100_000,
            master_seed: 0xC1A0,
            ..ExperimentConfig::default()
        };
        let output = simulate(&config).expect("simulation runs");
        for &n in &config.sizes {
            for &alpha in &config.alphas {
                for &est in &config.estimators {
                    let risks: Vec<f64> = output
                        .samples
                        .iter()
                        .filter(|s| s.n == n && s.alpha == alpha && s.estimator == est)
                        .map(|s| s.risk)
                        .collect();
                    assert_eq!(risks.len(), 100_000);
                    let (mean, se) = mean_and_se(&risks);
                    let exact = exact_risk(est, n, alpha, model).unwrap();
                    let z = (mean - exact).abs() / se;
                    assert!(
                        z <= 3.0,
                        "{model} {est} n={n} alpha={alpha}: mean {mean:.5} vs exact {exact:.5}, z = {z:.2}"
                    );
                }
            }
        }
        let elapsed = start.elapsed();
        assert!(
            elapsed.as_secs() < 120,
            "{model}: took {elapsed:?}, budget 2 min"
        );
    }
    println!("[acceptance] criterion 1 (oracle equivalence): PASS");
}

/// Descendant counts follow the Polya-urn laws: empirical mean of
/// de(j)+1 within 2% of n/j at n = 1000, and the empirical de(3)
/// histogram at n = 10 within total variation 0.01 of the exact pmf,
/// in both models.
#[test]
fn criterion_2_polya_urn_law() {
    let n = 1000usize;
    let reps = 10_000usize;
    for j in [2usize, 10, 100] {
        let mut total = 0usize;
        for rep in 0..reps {
            let mut rng = RngState::from_seed(derive_seed(0xBEE, &[j as u64, rep as u64]));
            let tree = generate_urrt(n, &mut rng).unwrap();
            let counts = arbor::centrality::subtree_size_counts(&tree.to_labeled(), 1).unwrap();
            total += counts[j]; // de(j) + 1
        }
        let mean = total as f64 / reps as f64;
        let target = n as f64 / j as f64;
        assert!(
            (mean - target).abs() / target <= 0.02,
            "j={j}: mean de+1 = {mean:.3}, target {target:.3}"
        );
    }

    let samples = 100_000usize;
    for model in Model::ALL {
        let pmf = match model {
            Model::Urrt => urrt_descendant_pmf(10, 3).unwrap(),
            Model::Pa => pa_descendant_pmf(10, 3).unwrap(),
        };
        let de: Vec<usize> = (0..samples)
            .map(|rep| {
                let mut rng =
                    RngState::from_seed(derive_seed(0xDEE, &[model as u64, rep as u64]));
                let tree = generate(model, 10, &mut rng).unwrap();
                let counts =
                    arbor::centrality::subtree_size_counts(&tree.to_labeled(), 1).unwrap();
                counts[3] - 1
            })
            .collect();
        let tv = pmf.tv_from_samples(&de);
        assert!(tv <= 0.01, "{model}: TV = {tv:.4}");
    }
    println!("[acceptance] criterion 2 (Polya-urn law): PASS");
}

/// On 100 size-1000 trees per model: off the root-to-centroid path the
/// Jordan centrality equals n - 1 - de(v) exactly, and the coupled
/// orderings agree in relative order off the path. Zero violations.
#[test]
fn criterion_3_off_path_structure() {
    for model in Model::ALL {
        for trial in 0..100u64 {
            let mut rng = RngState::from_seed(derive_seed(0x1E44A, &[model as u64, trial]));
            let tree = generate(model, 1000, &mut rng).unwrap();
            let (labeled, truth) = shuffle_labels(&tree, &mut rng);
            let root = truth.label_of(1);
            let n = labeled.n();
            let psi = jordan_centrality_counts(&labeled);
            let de = descendant_counts(&labeled, root).unwrap();
            let report = centroid(&labeled, root).unwrap();
            let mut on_path = vec![false; n + 1];
            for &u in &report.path_root_to_centroid {
                on_path[u] = true;
            }
            for v in 1..=n {
                if !on_path[v] {
                    assert_eq!(
                        psi[v],
                        n - 1 - de[v],
                        "{model} trial {trial}: off-path identity at vertex {v}"
                    );
                }
            }
            let (jordan, desc) = coupled_jordan_descendant(&labeled, root, &mut rng).unwrap();
            let mut off: Vec<usize> = (1..=n).filter(|&u| !on_path[u]).collect();
            off.sort_unstable_by_key(|&u| jordan.rank_of(u));
            for w in off.windows(2) {
                assert!(
                    desc.rank_of(w[0]) < desc.rank_of(w[1]),
                    "{model} trial {trial}: coupling broke off-path order"
                );
            }
        }
    }
    println!("[acceptance] criterion 3 (off-path structure): PASS");
}

/// Uniform model, alpha = 1, sizes 500..8000: the descendant ordering's
/// mean risk stays below the 18n envelope and the Jordan ordering's mean
/// risk stays above the n/70 minimax floor; under 5 minutes.
#[test]
fn criterion_4_bound_sandwich() {
    let start = Instant::now();
    let config = ExperimentConfig {
        model: Model::Urrt,
        sizes: vec![500, 1000, 2000, 4000, 8000],
        alphas: vec![1.0],
        estimators: vec![Estimator::Descendant, Estimator::Jordan],
        replicates: 10,
        master_seed: 0x5A11D,
        ..ExperimentConfig::default()
    };
    let output = simulate(&config).unwrap();
    for s in &output.summaries {
        match s.estimator {
            Estimator::Descendant => {
                let cap = 18.0 * s.n as f64;
                assert!(
                    s.mean <= cap,
                    "descendant n={}: mean {:.1} above 18n = {cap:.1}",
                    s.n,
                    s.mean
                );
            }
            Estimator::Jordan => {
                let floor = s.n as f64 / 70.0;
                assert!(
                    s.mean >= floor,
                    "jordan n={}: mean {:.1} below n/70 = {floor:.1}",
                    s.n,
                    s.mean
                );
            }
            _ => unreachable!(),
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 300, "took {elapsed:?}, budget 5 min");
    println!("[acceptance] criterion 4 (bound sandwich): PASS");
}

/// Log-log slope of the median descendant risk equals 2 - alpha within
/// 0.2 on sizes 1000..8000 (uniform: alpha in {1, 1.5}; preferential:
/// alpha in {1, 1.2}); the degree ordering's slope in the preferential
/// model at alpha = 1.2 is no more than 0.05 below the descendant's.
#[test]
fn criterion_5_growth_rates() {
    let grids = [
        (Model::Urrt, vec![1.0, 1.5], vec![Estimator::Descendant]),
        (
            Model::Pa,
            vec![1.0, 1.2],
            vec![Estimator::Descendant, Estimator::Degree],
        ),
    ];
    for (model, alphas, estimators) in grids {
        let config = ExperimentConfig {
            model,
            sizes: vec![1000, 2000, 4000, 8000],
            alphas: alphas.clone(),
            estimators,
            replicates: 10,
            master_seed: 0x4A7E5,
            ..ExperimentConfig::default()
        };
        let (_, rows) = arbor::experiment::rates(&config).unwrap();
        for row in &rows {
            println!(
                "[acceptance]   slope {model} alpha={} {}: {:.3} (r2 = {:.3})",
                row.alpha, row.estimator, row.fit.slope, row.fit.r_squared
            );
        }
        for &alpha in &alphas {
            let desc = rows
                .iter()
                .find(|r| r.alpha == alpha && r.estimator == Estimator::Descendant)
                .unwrap();
            assert!(
                (desc.fit.slope - (2.0 - alpha)).abs() <= 0.2,
                "{model} alpha={alpha}: descendant slope {:.3}",
                desc.fit.slope
            );
            if model == Model::Pa && alpha == 1.2 {
                let degree = rows
                    .iter()
                    .find(|r| r.alpha == alpha && r.estimator == Estimator::Degree)
                    .unwrap();
                assert!(
                    degree.fit.slope >= desc.fit.slope - 0.05,
                    "degree slope {:.3} vs descendant {:.3}",
                    degree.fit.slope,
                    desc.fit.slope
                );
            }
        }
    }
    println!("[acceptance] criterion 5 (growth rates): PASS");
}

/// Median risks order the methods as in the comparison study:
/// descendant < degree < spectral at n in {1000, 2000} (uniform at
/// alpha = 1.5, preferential at alpha = 1.2), and reverse DMC is no
/// better than degree in the preferential model at n = 1000.
#[test]
fn criterion_6_method_ranking() {
    let median_of = |samples: &[RiskSample], n: usize, est: Estimator| -> f64 {
        let mut risks: Vec<f64> = samples
            .iter()
            .filter(|s| s.n == n && s.estimator == est)
            .map(|s| s.risk)
            .collect();
        assert!(!risks.is_empty());
        risks.sort_by(f64::total_cmp);
        let m = risks.len();
        if m % 2 == 1 {
            risks[m / 2]
        } else {
            0.5 * (risks[m / 2 - 1] + risks[m / 2])
        }
    };

    for (model, alpha) in [(Model::Urrt, 1.5), (Model::Pa, 1.2)] {
        let mut estimators = vec![Estimator::Descendant, Estimator::Degree, Estimator::Spectral];
        if model == Model::Pa {
            estimators.push(Estimator::ReverseDmc);
        }
        let config = ExperimentConfig {
            model,
            sizes: vec![1000, 2000],
            alphas: vec![alpha],
            estimators,
            replicates: 10,
            master_seed: 0x4E4C,
            ..ExperimentConfig::default()
        };
        let output = simulate(&config).unwrap();
        for &n in &config.sizes {
            let desc = median_of(&output.samples, n, Estimator::Descendant);
            let degree = median_of(&output.samples, n, Estimator::Degree);
            let spectral = median_of(&output.samples, n, Estimator::Spectral);
            println!(
                "[acceptance]   medians {model} alpha={alpha} n={n}: descendant {desc:.1}, degree {degree:.1}, spectral {spectral:.1}"
            );
            assert!(desc < degree, "{model} n={n}: descendant !< degree");
            assert!(degree < spectral, "{model} n={n}: degree !< spectral");
            if model == Model::Pa && n <= 1000 {
                let rdmc = median_of(&output.samples, n, Estimator::ReverseDmc);
                println!("[acceptance]   reverse_dmc median at n={n}: {rdmc:.1}");
                assert!(rdmc >= degree, "reverse_dmc beat degree at n={n}");
            }
        }
    }
    println!("[acceptance] criterion 6 (method ranking): PASS");
}

/// Two-sample Kolmogorov-Smirnov statistic for integer samples.
fn ks_statistic(a: &[usize], b: &[usize]) -> f64 {
    let mut xs: Vec<usize> = a.iter().chain(b).copied().collect();
    xs.sort_unstable();
    xs.dedup();
    let mut a_sorted = a.to_vec();
    let mut b_sorted = b.to_vec();
    a_sorted.sort_unstable();
    b_sorted.sort_unstable();
    let ecdf = |s: &[usize], x: usize| s.partition_point(|&v| v <= x) as f64 / s.len() as f64;
    xs.iter()
        .map(|&x| (ecdf(&a_sorted, x) - ecdf(&b_sorted, x)).abs())
        .fold(0.0, f64::max)
}

/// Reruns are byte-identical (serial vs 8-way parallel); the centrality
/// multiset is exactly invariant under relabeling; and the Jordan
/// estimator's rank distribution for a distinguished vertex is
/// statistically indistinguishable before and after relabeling.
#[test]
fn criterion_7_determinism_and_label_invariance() {
    // byte-identical CSVs
    let dir = tempfile::tempdir().unwrap();
    let base = ExperimentConfig {
        model: Model::Pa,
        sizes: vec![200],
        alphas: vec![1.0],
        estimators: Estimator::ALL.to_vec(),
        replicates: 20,
        master_seed: 0xD17E,
        output_dir: dir.path().join("serial"),
        threads: Some(1),
        ..ExperimentConfig::default()
    };
    let serial_out = simulate(&base).unwrap();
    write_outputs(&serial_out, None, &base).unwrap();
    let parallel_cfg = ExperimentConfig {
        output_dir: dir.path().join("parallel"),
        threads: Some(8),
        ..base.clone()
    };
    let parallel_out = simulate(&parallel_cfg).unwrap();
    write_outputs(&parallel_out, None, &parallel_cfg).unwrap();
    for file in ["samples.csv", "summary.csv"] {
        let a = std::fs::read(dir.path().join("serial").join(file)).unwrap();
        let b = std::fs::read(dir.path().join("parallel").join(file)).unwrap();
        assert!(!a.is_empty() && a == b, "{file} differs between runs");
    }

    // exact multiset invariance of the centrality vector
    let mut rng = RngState::from_seed(0x5EED);
    let tree = generate_urrt(500, &mut rng).unwrap();
    let mut reference: Vec<usize> = jordan_centrality_counts(&tree.to_labeled())[1..].to_vec();
    reference.sort_unstable();
    for _ in 0..100 {
        let (labeled, _) = shuffle_labels(&tree, &mut rng);
        let mut psi: Vec<usize> = jordan_centrality_counts(&labeled)[1..].to_vec();
        psi.sort_unstable();
        assert_eq!(psi, reference);
    }

    // KS on the rank of a distinguished vertex before/after relabeling
    let tree = generate_urrt(200, &mut RngState::from_seed(0xFACE)).unwrap();
    let original = tree.to_labeled();
    let (relabeled, truth) = shuffle_labels(&tree, &mut RngState::from_seed(0xF00D));
    let probe_rank = 1usize; // true root; any fixed vertex works
    let reps = 10_000u64;
    let before: Vec<usize> = (0..reps)
        .map(|s| {
            jordan_ordering(&original, &mut RngState::from_seed(derive_seed(70, &[s])))
                .rank_of(probe_rank)
        })
        .collect();
    let after: Vec<usize> = (0..reps)
        .map(|s| {
            jordan_ordering(&relabeled, &mut RngState::from_seed(derive_seed(71, &[s])))
                .rank_of(truth.label_of(probe_rank))
        })
        .collect();
    let d = ks_statistic(&before, &after);
    let crit = 1.628 * (2.0 / reps as f64).sqrt(); // level 0.01
    assert!(d < crit, "KS = {d:.4}, critical {crit:.4}");
    println!("[acceptance] criterion 7 (determinism & label invariance): PASS");
}

/// Fiedler residuals meet the 1e-8 tolerance on 100 random size-1000
/// trees, and the path-graph eigenvalue matches 2 - 2cos(pi/n) to 1e-8.
#[test]
fn criterion_8_spectral_correctness() {
    let mut rng = RngState::from_seed(0x5BEC);
    for trial in 0..100 {
        let model = if trial % 2 == 0 { Model::Urrt } else { Model::Pa };
        let tree = generate(model, 1000, &mut rng).unwrap();
        let (labeled, _) = shuffle_labels(&tree, &mut rng);
        let eig = fiedler_vector(&labeled, 1e-8, default_max_iter(1000), &mut rng).unwrap();
        assert!(eig.residual <= 1e-8, "trial {trial}: residual {}", eig.residual);
        assert!(eig.lambda2 > 0.0);
    }
    for n in [4usize, 16, 64] {
        let edges: Vec<(usize, usize)> = (1..n).map(|u| (u, u + 1)).collect();
        let path = LabeledTree::from_edges(n, &edges).unwrap();
        let eig = fiedler_vector(&path, 1e-10, default_max_iter(n), &mut rng).unwrap();
        let exact = 2.0 - 2.0 * (std::f64::consts::PI / n as f64).cos();
        assert!(
            (eig.lambda2 - exact).abs() <= 1e-8,
            "n={n}: lambda2 {} vs {exact}",
            eig.lambda2
        );
    }
    println!("[acceptance] criterion 8 (spectral correctness): PASS");
}

/// Jordan, descendant, and reverse-DMC orderings are recursive on every
/// sampled tree; the degree ordering's violation rate is reported.
#[test]
fn criterion_9_recursiveness() {
    let mut degree_violations = 0usize;
    let mut total = 0usize;
    for model in Model::ALL {
        for trial in 0..1000u64 {
            let mut rng = RngState::from_seed(derive_seed(0x4EC, &[model as u64, trial]));
            let n = 2 + rng.index(299); // sizes 2..=300
            let tree = generate(model, n, &mut rng).unwrap();
            let (labeled, truth) = shuffle_labels(&tree, &mut rng);
            let root = truth.label_of(1);
            assert!(
                jordan_ordering(&labeled, &mut rng).is_recursive_on(&labeled),
                "{model} trial {trial}: jordan not recursive"
            );
            assert!(
                descendant_ordering(&labeled, root, &mut rng)
                    .unwrap()
                    .is_recursive_on(&labeled),
                "{model} trial {trial}: descendant not recursive"
            );
            assert!(
                reverse_dmc_ordering(&labeled, &mut rng).is_recursive_on(&labeled),
                "{model} trial {trial}: reverse DMC not recursive"
            );
            if !degree_ordering(&labeled, &mut rng).is_recursive_on(&labeled) {
                degree_violations += 1;
            }
            total += 1;
        }
    }
    println!(
        "[acceptance]   degree ordering recursive-check violation rate: {}/{total}",
        degree_violations
    );
    println!("[acceptance] criterion 9 (recursiveness): PASS");
}
