use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use plateau_bench::{inner_product, majority, scrambled};
use plateau_core::boolfun::mobius_in_place;
use plateau_core::{fourier, full_characterization, walsh_hadamard, AnalysisConfig, CayleyGraph};

fn transforms(c: &mut Criterion) {
    let mut group = c.benchmark_group("walsh_hadamard");
    for n in [8u32, 12, 16, 20] {
        let f = scrambled(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| {
            b.iter(|| walsh_hadamard(black_box(f)))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("mobius");
    for n in [8u32, 12, 16, 20] {
        let table = scrambled(n).truth_table().to_vec();
        group.bench_with_input(BenchmarkId::from_parameter(n), &table, |b, t| {
            b.iter(|| {
                let mut t = t.clone();
                mobius_in_place(&mut t);
                t
            })
        });
    }
    group.finish();
}

fn matrix_power(c: &mut Criterion) {
    let mut group = c.benchmark_group("adjacency_power");
    group.sample_size(10);
    for n in [4u32, 6, 8] {
        let a = CayleyGraph::build(&inner_product(n))
            .unwrap()
            .adjacency_matrix(n)
            .unwrap();
        group.bench_with_input(BenchmarkId::new("cube", n), &a, |b, a| b.iter(|| a.pow(3).unwrap()));
    }
    group.finish();
}

fn characterization(c: &mut Criterion) {
    let cfg = AnalysisConfig::default();
    let mut group = c.benchmark_group("full_characterization");
    group.sample_size(10);
    for (name, f) in [
        ("majority_5", majority(5)),
        ("inner_product_6", inner_product(6)),
        ("scrambled_6", scrambled(6)),
    ] {
        group.bench_function(name, |b| b.iter(|| full_characterization(black_box(&f), &cfg).unwrap()));
    }
    let f = inner_product(10);
    let g = CayleyGraph::build(&f).unwrap();
    let spectrum = fourier(&f);
    group.bench_function("sampled_spectrum_10", |b| {
        b.iter(|| g.spectrum(&spectrum, &cfg).unwrap())
    });
    group.finish();
}

criterion_group!(benches, transforms, matrix_power, characterization);
criterion_main!(benches);
