use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use xxchain::*;

fn params(n: usize) -> ChainParams {
    ChainParams::unit(n, 0.37).unwrap()
}

fn spectrum(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectrum");
    for n in [6, 8, 10] {
        let p = params(n);
        group.bench_with_input(BenchmarkId::new("closed_form", n), &p, |bch, p| {
            bch.iter(|| enumerate_levels(black_box(p)).unwrap().map(|l| l.energy).sum::<f64>())
        });
        group.bench_with_input(BenchmarkId::new("dense_oracle", n), &p, |bch, p| {
            bch.iter(|| diagonalize(&build_hamiltonian(black_box(p)).unwrap()).unwrap())
        });
    }
    group.finish();
}

fn purity(c: &mut Criterion) {
    let mut group = c.benchmark_group("purity");
    let beta = 1.3;
    for n in [4, 6, 8, 10] {
        let p = params(n);
        group.bench_with_input(BenchmarkId::new("closed_form", n), &p, |bch, p| {
            bch.iter(|| purity_analytic(black_box(p), beta).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("dense_from_scratch", n), &p, |bch, p| {
            bch.iter(|| purity_dense(&thermal_density_matrix(black_box(p), beta).unwrap()))
        });
        // eigenvectors built once, as a (B, T) sweep would
        let basis = SectorBasis::new(n, n).unwrap();
        group.bench_with_input(BenchmarkId::new("dense_cached_basis", n), &p, |bch, p| {
            bch.iter(|| {
                let ensemble = boltzmann_weights(black_box(p), beta).unwrap();
                purity_dense(&basis.density_matrix(&ensemble).unwrap())
            })
        });
    }
    group.finish();
}

fn partition(c: &mut Criterion) {
    let mut group = c.benchmark_group("log_partition");
    let beta = 0.8;
    for n in [8, 12, 16] {
        let p = params(n);
        group.bench_with_input(BenchmarkId::new("product_form", n), &p, |bch, p| {
            bch.iter(|| log_partition_function(black_box(p), beta).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("level_sum", n), &p, |bch, p| {
            bch.iter(|| {
                enumerate_levels(black_box(p))
                    .unwrap()
                    .map(|l| (-beta * l.energy).exp())
                    .sum::<f64>()
                    .ln()
            })
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10).measurement_time(Duration::from_secs(3));
    targets = spectrum, purity, partition
}
criterion_main!(benches);
