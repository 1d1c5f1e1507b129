use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lpakt_bench::{named_graphs, ring, sink_free_corpus};
use lpakt_core::cskl::strongly_graded_via_cskl;
use lpakt_core::intlin::{snf, IntMatrix};
use lpakt_core::ktheory::{compute_k0, compute_kgr, verify_exact_sequence};
use lpakt_core::lpa::{verify_strongly_graded, Lpa};
use lpakt_core::monoid::{monoid_equal, MonoidElement};
use lpakt_core::report::example_report;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bench_snf(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mats: Vec<IntMatrix> = (0..32)
        .map(|_| {
            let rows: Vec<Vec<i64>> = (0..5).map(|_| (0..5).map(|_| rng.random_range(-5..=5)).collect()).collect();
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            IntMatrix::from_rows(&refs)
        })
        .collect();
    c.bench_function("snf/32 random 5x5", |b| b.iter(|| mats.iter().map(|m| snf(black_box(m)).rank()).sum::<usize>()));
}

fn bench_k_theory(c: &mut Criterion) {
    let mut group = c.benchmark_group("k-theory");
    for (name, g) in named_graphs() {
        group.bench_with_input(BenchmarkId::new("k0", name), &g, |b, g| b.iter(|| compute_k0(black_box(g))));
        group.bench_with_input(BenchmarkId::new("kgr", name), &g, |b, g| b.iter(|| compute_kgr(black_box(g))));
    }
    let corpus = sink_free_corpus(10);
    group.bench_function("exact sequence/10 graphs, 100 samples", |b| {
        b.iter(|| corpus.iter().all(|g| verify_exact_sequence(g, 100, 0).map(|r| r.passed()).unwrap_or(false)))
    });
    group.finish();
}

fn bench_algebra(c: &mut Criterion) {
    let g = ring(4);
    let lpa = Lpa::new(&g);
    let x = lpa.parse("e1 e2 e3* + l l* + 1/2 e4* l*").unwrap();
    let y = lpa.parse("l e1 e1* + e4 e4* l* + v2").unwrap();
    c.bench_function("lpa/product on ring4", |b| b.iter(|| lpa.mul(black_box(&x), black_box(&y))));
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    c.bench_function("lpa/product by rewriting on ring4", |b| b.iter(|| lpa.mul_by_rewriting(&x, &y, &mut rng)));

    let mut group = c.benchmark_group("strong grading");
    for (name, g) in named_graphs() {
        group.bench_with_input(BenchmarkId::new("cskl", name), &g, |b, g| b.iter(|| strongly_graded_via_cskl(black_box(g))));
        group.bench_with_input(BenchmarkId::new("symbolic n=1", name), &g, |b, g| b.iter(|| verify_strongly_graded(g, 1)));
    }
    group.finish();
}

fn bench_monoid(c: &mut Criterion) {
    let g = ring(5);
    let n = g.vertex_count();
    let (p, q) = (MonoidElement::vertex(n, 0), MonoidElement::vertex(n, 2));
    c.bench_function("monoid/ring5 v1 vs v3", |b| b.iter(|| monoid_equal(&g, &p, &q, 12, 100_000)));
}

fn bench_report(c: &mut Criterion) {
    let mut group = c.benchmark_group("report");
    group.sample_size(10);
    group.bench_function("example report", |b| b.iter(example_report));
    group.finish();
}

criterion_group!(benches, bench_snf, bench_k_theory, bench_algebra, bench_monoid, bench_report);
criterion_main!(benches);
