use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use sigma_sumset_core::{
    cyclic_symmetric_witness, fold_signed_sumset, fold_sumset, rho_pm_restricted,
    u_pm_via_divisors, u_pm_via_factorization, ElementSet, GroupSpec, SearchOptions,
};

fn bench_folds(c: &mut Criterion) {
    let mut group = c.benchmark_group("fold");
    for n in [24u64, 96, 720] {
        let g = GroupSpec::new(&[n]).unwrap();
        let a = ElementSet::from_indices(&g, &(0..n).step_by(5).collect::<Vec<_>>()).unwrap();
        group.bench_with_input(BenchmarkId::new("signed_h3", n), &a, |b, a| {
            b.iter(|| fold_signed_sumset(black_box(a), 3).unwrap().len())
        });
        group.bench_with_input(BenchmarkId::new("plain_h3", n), &a, |b, a| {
            b.iter(|| fold_sumset(black_box(a), 3).unwrap().len())
        });
    }
    group.finish();
}

fn bench_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    let opts = SearchOptions::default();
    let g33 = GroupSpec::new(&[3, 3]).unwrap();
    group.bench_function("rho_pm(3,3; 4, 2)", |b| {
        b.iter(|| {
            rho_pm_restricted(black_box(&g33), 4, 2, &opts)
                .unwrap()
                .value
        })
    });
    let z24 = GroupSpec::new(&[24]).unwrap();
    group.bench_function("rho_pm(24; 8, 2)", |b| {
        b.iter(|| {
            rho_pm_restricted(black_box(&z24), 8, 2, &opts)
                .unwrap()
                .value
        })
    });
    let g55 = GroupSpec::new(&[5, 5]).unwrap();
    group.bench_function("rho_pm(5,5; 9, 2)", |b| {
        b.iter(|| {
            rho_pm_restricted(black_box(&g55), 9, 2, &opts)
                .unwrap()
                .value
        })
    });
    group.finish();
}

fn bench_formulas(c: &mut Criterion) {
    let mut group = c.benchmark_group("u_pm");
    let g = GroupSpec::new(&[2, 6, 12]).unwrap();
    group.bench_function("divisor_route(2,6,12)", |b| {
        b.iter(|| {
            (1..=g.order())
                .map(|m| u_pm_via_divisors(black_box(&g), m, 3).unwrap().value)
                .sum::<u64>()
        })
    });
    group.bench_function("factorization_route(2,6,12)", |b| {
        b.iter(|| {
            (1..=g.order())
                .map(|m| u_pm_via_factorization(black_box(&g), m, 3).unwrap().value)
                .sum::<u64>()
        })
    });
    group.finish();
}

fn bench_constructions(c: &mut Criterion) {
    c.bench_function("cyclic_witnesses_n_120", |b| {
        b.iter(|| {
            let mut total = 0u64;
            for d in sigma_sumset_core::divisors(120).unwrap() {
                let w = cyclic_symmetric_witness(120, 50, d).unwrap();
                total += fold_sumset(&w.set, 4).unwrap().len();
            }
            total
        })
    });
}

criterion_group!(
    benches,
    bench_folds,
    bench_search,
    bench_formulas,
    bench_constructions
);
criterion_main!(benches);
