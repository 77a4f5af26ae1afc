//! Compares the data-parallel cell runner against the sequential fallback,
//! plus raw generator throughput.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use arbor::experiment::{build_cells, run_cells, run_cells_serial, ExperimentConfig};
use arbor::rng::RngState;
use arbor::treegen::{generate_pa, generate_urrt};
use arbor::Estimator;

fn bench_generators(c: &mut Criterion) {
    let mut group = c.benchmark_group("treegen");
    for n in [1_000usize, 100_000] {
        group.bench_with_input(BenchmarkId::new("urrt", n), &n, |b, &n| {
            let mut rng = RngState::from_seed(1);
            b.iter(|| generate_urrt(n, &mut rng).unwrap());
        });
        group.bench_with_input(BenchmarkId::new("pa", n), &n, |b, &n| {
            let mut rng = RngState::from_seed(1);
            b.iter(|| generate_pa(n, &mut rng).unwrap());
        });
    }
    group.finish();
}

fn bench_simulation(c: &mut Criterion) {
    let config = ExperimentConfig {
        sizes: vec![2_000],
        alphas: vec![1.0],
        estimators: vec![Estimator::Jordan, Estimator::Descendant, Estimator::Degree],
        replicates: 16,
        ..ExperimentConfig::default()
    };
    let cells = build_cells(&config).unwrap();
    let mut group = c.benchmark_group("simulate_48_cells_n2000");
    group.sample_size(10);
    group.bench_function("serial", |b| {
        b.iter(|| run_cells_serial(&cells, config.spectral_tol).unwrap())
    });
    group.bench_function("parallel", |b| {
        b.iter(|| run_cells(&cells, config.spectral_tol, None).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_generators, bench_simulation);
criterion_main!(benches);
