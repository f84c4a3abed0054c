use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use scat_bench::{collapsible, cycle, sphere, wrap};
use scat_core::category::{build_factorization, gscat_upper, scat, scat_map};
use scat_core::contiguity::{class_partition, core, same_contiguity_class, SimplicialMap};
use scat_core::finite_space::{cat_space, chi_map, face_poset};
use scat_core::scomplex::enumerate_corpus;
use scat_core::SearchLimits;

fn category(c: &mut Criterion) {
    let lim = SearchLimits::default();
    let mut g = c.benchmark_group("scat");
    for n in [4, 6, 8] {
        let k = cycle(n);
        g.bench_with_input(BenchmarkId::new("cycle", n), &k, |b, k| b.iter(|| scat(k, &lim).unwrap()));
    }
    let s = sphere(3);
    g.bench_function("sphere2", |b| b.iter(|| scat(&s, &lim).unwrap()));
    let f = wrap(2, 4);
    g.bench_function("double_wrap_c8_c4", |b| b.iter(|| scat_map(&f, &lim).unwrap()));
    g.finish();

    let s2 = sphere(2);
    c.bench_function("gscat_upper/sphere1", |b| b.iter(|| gscat_upper(&s2, &lim).unwrap()));

    let (_, cover) = scat_map(&f, &lim).unwrap();
    c.bench_function("factorization/double_wrap", |b| b.iter(|| build_factorization(&f, &cover).unwrap()));
}

fn contiguity(c: &mut Criterion) {
    let lim = SearchLimits::default();
    let k = collapsible();
    c.bench_function("core/collapsible", |b| b.iter(|| core(&k).unwrap()));

    let c5 = cycle(5);
    let id = SimplicialMap::identity(&c5);
    let rot = SimplicialMap::new(Arc::clone(&c5), Arc::clone(&c5), (0..5).map(|i| (i + 1) % 5).collect()).unwrap();
    c.bench_function("same_class/c5_rotation", |b| b.iter(|| same_contiguity_class(&id, &rot, &lim).unwrap()));

    let c4 = cycle(4);
    c.bench_function("class_partition/c4_c4", |b| b.iter(|| class_partition(&c4, &c4, &lim).unwrap()));
}

fn finite_spaces(c: &mut Criterion) {
    let lim = SearchLimits::default();
    let c4 = cycle(4);
    let x = face_poset(&c4, &lim).unwrap().space;
    c.bench_function("cat_space/face_poset_c4", |b| b.iter(|| cat_space(&x, &lim).unwrap()));
    let f = wrap(2, 4);
    c.bench_function("chi_map/double_wrap", |b| b.iter(|| chi_map(&f, &lim).unwrap()));
}

fn corpus(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_corpus");
    g.sample_size(10);
    for n in [3, 4] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| enumerate_corpus(n, 10).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, category, contiguity, finite_spaces, corpus);
criterion_main!(benches);
