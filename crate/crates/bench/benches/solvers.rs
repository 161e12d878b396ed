use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use kneser_core::geometry::{enumerate_tverberg_partitions, stretched_config};
use kneser_core::setsystem::{filter_s_stable, k_subsets};
use kneser_core::topology::{betti_numbers, deleted_join, Field, SimplicialComplex};
use kneser_core::{build_kneser, chromatic_number_exact, colorability_defect};

fn chromatic(c: &mut Criterion) {
    let mut group = c.benchmark_group("chromatic_exact");
    group.sample_size(10);
    for (r, k, n) in [(2, 2, 7), (2, 3, 9), (3, 2, 8), (4, 2, 9)] {
        let h = build_kneser(&k_subsets(n, k).unwrap(), r).unwrap();
        group.bench_with_input(BenchmarkId::new("plain", format!("r{r}k{k}n{n}")), &h, |b, h| {
            b.iter(|| chromatic_number_exact(black_box(h), u64::MAX).unwrap())
        });
    }
    let stable = filter_s_stable(&k_subsets(8, 2).unwrap(), 2).unwrap();
    let h = build_kneser(&stable, 3).unwrap();
    group.bench_function("stable/r3k2n8", |b| {
        b.iter(|| chromatic_number_exact(black_box(&h), u64::MAX).unwrap())
    });
    group.finish();
}

fn defect(c: &mut Criterion) {
    let mut group = c.benchmark_group("colorability_defect");
    for (r, k, n) in [(2, 2, 10), (3, 3, 10), (4, 3, 10)] {
        let f = k_subsets(n, k).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("r{r}k{k}n{n}")), &f, |b, f| {
            b.iter(|| colorability_defect(black_box(f), r).unwrap())
        });
    }
    group.finish();
}

fn tverberg(c: &mut Criterion) {
    let base = 2.into();
    let config = stretched_config(2, 5, &base).unwrap();
    c.bench_function("tverberg/d2_5pts", |b| {
        b.iter(|| enumerate_tverberg_partitions(black_box(&config), 2).unwrap())
    });
}

fn homology(c: &mut Criterion) {
    let dj = deleted_join(&SimplicialComplex::simplex(5).unwrap(), 3, 2).unwrap();
    c.bench_function("betti/deleted_join_5_3", |b| {
        b.iter(|| betti_numbers(black_box(&dj), Field::Prime(3)))
    });
}

criterion_group!(benches, chromatic, defect, tverberg, homology);
criterion_main!(benches);
