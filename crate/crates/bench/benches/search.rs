use criterion::{black_box, criterion_group, criterion_main, Criterion};
use zs_core::extremal::{cross_product_check, max_independent_exact, verify_extremal};
use zs_core::matchings::{all_edge_sets, canonical_family};
use zs_core::scheme::{build_scheme, fourier_support, MatchingFunction};

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("extremal");
    group.sample_size(10);
    group.bench_function("max-independent n4 t1", |b| {
        b.iter(|| max_independent_exact(black_box(4), 1, false).unwrap())
    });
    group.bench_function("max-independent n5 t1", |b| {
        b.iter(|| max_independent_exact(black_box(5), 1, true).unwrap())
    });
    group.bench_function("verify-extremal n4 t2", |b| b.iter(|| verify_extremal(black_box(4), 2, false).unwrap()));
    group.bench_function("cross-product n4 t1", |b| {
        b.iter(|| cross_product_check(black_box(4), 1, 0, 50).unwrap())
    });
    group.finish();
}

fn scheme(c: &mut Criterion) {
    let mut group = c.benchmark_group("scheme");
    group.sample_size(10);
    group.bench_function("build n5", |b| b.iter(|| build_scheme(black_box(5)).unwrap()));
    let s = build_scheme(5).unwrap();
    let fixed = all_edge_sets(5, 2).into_iter().next().unwrap();
    let f = MatchingFunction::indicator(&s, &canonical_family(&fixed, 5).unwrap()).unwrap();
    group.bench_function("fourier-support n5 t2", |b| b.iter(|| fourier_support(&s, black_box(&f)).unwrap()));
    group.finish();
}

criterion_group!(benches, search, scheme);
criterion_main!(benches);
