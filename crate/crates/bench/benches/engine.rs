use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use hecke_bench::{algebra, dense};
use hecke_core::cellular::CellularBasis;
use hecke_core::schur::consistency_report;
use hecke_core::seminormal::f_t_element;
use hecke_core::{multipartitions, standard_tableaux};

fn multiplication(c: &mut Criterion) {
    for (m, n) in [(2, 3), (3, 2), (1, 4)] {
        let alg = algebra(m, n);
        let a = dense(&alg);
        c.bench_function(&format!("mul dense ({m},{n})"), |b| b.iter(|| alg.mul(black_box(&a), black_box(&a))));
    }
    c.bench_function("algebra tables (2,3)", |b| b.iter(|| algebra(2, 3)));
}

fn bases(c: &mut Criterion) {
    let alg = algebra(2, 3);
    let mut g = c.benchmark_group("bases (2,3)");
    g.sample_size(10);
    g.bench_function("cellular basis", |b| b.iter(|| CellularBasis::new(&alg).unwrap()));
    let tabs: Vec<_> = multipartitions(2, 3).iter().flat_map(standard_tableaux).collect();
    g.bench_function("all F_t", |b| {
        b.iter(|| tabs.iter().map(|t| f_t_element(&alg, t).unwrap()).count())
    });
    g.bench_function("schur report", |b| b.iter(|| consistency_report(&alg).unwrap()));
    g.finish();
}

criterion_group!(benches, multiplication, bases);
criterion_main!(benches);
